#pragma once

// Decoupling frame graph: breadth-first application of a declared pulse set to
// a start frame, with canonical vertex deduplication, plus walk search over
// prescribed vertex sets.

#include "qseq/spin.hpp"

#include <optional>

namespace qseq {

struct PulseSpecEntry {
    std::string label;
    Mat generator;       // Hermitian
    double rotation_angle; // radians
};

struct PulseSet {
    std::vector<PulseSpecEntry> generators;
    void validate() const;
};

// Default qutrit pulse set: balanced double drives, per-transition phases on
// the grid {0, pi/2, pi, 3pi/2}, rotation angles {pi/2, pi}.
PulseSet default_qutrit_pulses();

// Qubit pulse set: +-pi/2 rotations about x and y.
PulseSet default_qubit_pulses();

struct GraphEdge {
    int from = -1, to = -1;
    int pulse = -1;  // index into the pulse set
    int sign = +1;   // +1 forward, -1 inverse application
};

struct FrameGraph {
    std::vector<Mat> vertices;            // frames, vertex 0 = start
    std::vector<Mat> realizing;           // one realizing unitary per vertex
    std::vector<GraphEdge> edges;
    PulseSet pulses;
    int dim = 3;

    std::optional<int> find_vertex(const Mat& frame, double tol = 1e-9) const;
    std::vector<int> neighbors(int v) const;
};

// BFS up to `depth` pulse applications (each pulse usable in both rotation
// directions). Throws on vertex overflow.
FrameGraph build_graph(const Mat& start, const PulseSet& pulses, int depth,
                       int vertex_cap = 10000);

struct WeightedFrameRequirement {
    std::vector<Mat> frames;
    std::vector<double> weights; // sums to 1
};

enum class WalkPolicy { first_found, minimize_pulses };

struct FrameWalk {
    std::vector<int> vertices;   // visited vertex ids, in order (walk[0] = start)
    std::vector<int> edge_ids;   // edge ids joining consecutive vertices
    std::vector<double> dwell;   // dwell time weight per visit (>= 0)
    bool closed = false;         // returns to the start vertex in frame space
};

// Closed walk through all required frames with dwell proportional to the
// requirement weights. Dwell is placed on the first visit of each required
// frame; revisits and pass-through vertices get zero dwell.
FrameWalk find_walk(const FrameGraph& graph, const WeightedFrameRequirement& required,
                    WalkPolicy policy = WalkPolicy::first_found);

// JSON / DOT exports.
std::string graph_to_json(const FrameGraph& g);
std::string graph_to_dot(const FrameGraph& g);

} // namespace qseq
