#pragma once

// Pulse sequences: segment lists (free evolution + parameterized pulses),
// compilation of frame walks into schedules with the diagonal phase-history
// correction, frame-matrix representation, JSON round-trip.

#include "qseq/graph.hpp"

namespace qseq {

struct Pulse {
    enum class Kind { balanced_double, single_transition };
    Kind kind = Kind::balanced_double;
    int transition = 0;          // single_transition: 0 = |+1>-|0>, 1 = |0>-|-1>
    double phase1 = 0.0;         // radians (single_transition uses phase1 only)
    double phase2 = 0.0;
    double rotation_angle = 0.0; // signed theta; unitary = exp(-i theta G)
    double duration = 0.0;       // seconds

    // qubit pulses: generator given explicitly (axis in the Pauli basis)
    bool explicit_generator = false;
    Mat generator_matrix;

    Mat generator(int dim) const;
    // Generator with per-transition amplitude scaling (1+eps1), (1+eps2).
    Mat generator_with_error(int dim, double eps1, double eps2) const;
    Mat unitary(int dim) const; // exp(-i rotation_angle * generator)
};

struct Segment {
    enum class Kind { free_evolution, pulse };
    Kind kind = Kind::free_evolution;
    double duration = 0.0; // seconds (free evolution)
    Pulse pulse;           // valid when kind == pulse

    static Segment dwell(double t) { Segment s; s.duration = t; return s; }
    static Segment of(const Pulse& p) {
        Segment s; s.kind = Kind::pulse; s.pulse = p; return s;
    }
};

struct PulseSequence {
    std::string name;
    int dim = 3;
    std::vector<Segment> segments;
    Mat net_rotation; // ideal product of pulse unitaries over one cycle
    bool cyclic = false; // net rotation is diagonal (phase-only)

    double cycle_time() const;
    int pulse_count() const;
    // Frames visited during free-evolution segments (ideal pulses), plus the
    // realizing unitary at each free segment.
    struct FrameTrace {
        std::vector<Mat> frames;
        std::vector<Mat> unitaries;
        std::vector<double> durations;
    };
    FrameTrace frame_trace() const;
    void finalize(); // computes net_rotation and cyclic from segments
};

// Balanced-pulse synthesis: given accumulated unitary U and target frame B,
// find phases (phi1, phi2) and angle theta (from the candidate list) with
// exp(-i theta G(phi1,phi2)) mapping the current frame to B. Throws when no
// candidate works (hop not realizable by one balanced pulse).
Pulse synthesize_balanced_hop(const Mat& U, const Mat& target_frame,
                              const std::vector<double>& angles = {PI / 2},
                              double tp_per_quarter = 8e-9);

struct Timing {
    double tau = 25e-9;   // free evolution per dwell unit
    double t_pi2 = 8e-9;  // duration of a spin-1 pi/2 pulse
};

// Compile a frame walk on a graph into a pulse schedule. Each edge's pulse is
// re-phased by the accumulated diagonal phase history (D P D^dag with
// D = U_accum * U_vertex^dag), which only shifts drive phases. Dwell weights
// convert to durations as weight * n_dwell * tau.
PulseSequence compile_walk(const FrameWalk& walk, const FrameGraph& graph,
                           const Timing& timing);

// Frame-matrix representation: rows = Gell-Mann basis components (or Pauli for
// d=2), columns = intervals. Free-evolution columns carry the frame itself;
// pulse columns carry intermediate frames (midpoint frame for a pi pulse, the
// (4/pi)(S1+S2)/2 average for a pi/2 pulse). Throws for non-geodesic pulses.
struct FrameMatrix {
    std::vector<std::string> column_kind; // "free" or "pulse"
    Eigen::MatrixXd entries;              // (8 or 3) x n_columns
};
FrameMatrix frame_matrix(const PulseSequence& seq);

// JSON round trip (degrees and nanoseconds in files, radians/seconds in memory).
std::string sequence_to_json(const PulseSequence& seq);
PulseSequence sequence_from_json(const std::string& text);

} // namespace qseq
