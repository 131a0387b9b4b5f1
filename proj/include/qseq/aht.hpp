#pragma once

// Zeroth-order average Hamiltonians with finite-pulse contributions, plus the
// exact one- and two-spin Floquet-log oracle and robustness scans built on it.

#include "qseq/sequence.hpp"

#include <map>

namespace qseq {

struct EffectiveHamiltonianReport {
    // Averages of the disorder-z, disorder-z^2 (traceless) and two-body
    // interaction terms, split into free-evolution and in-pulse parts.
    std::map<std::string, Mat> free_part;   // keys: dz, dz2, int2
    std::map<std::string, Mat> pulse_part;  // same keys (zero when ideal pulses)
    std::map<std::string, double> coefficient_norm; // Frobenius of free+pulse
    double cycle_time = 0;
};

// finite_pulses=false treats pulses as instantaneous (dwell-weighted frame
// averages only); finite_pulses=true adds the exact in-pulse averages via the
// spectral pulse_average_operator.
EffectiveHamiltonianReport average_hamiltonian(const PulseSequence& seq,
                                               const HamiltonianSpec& spec,
                                               bool finite_pulses);

struct FloquetOptions {
    int n_spins = 1;         // 1 or 2
    double eps1 = 0.0;       // fractional rotation error, transition |+1>-|0>
    double eps2 = 0.0;       // fractional rotation error, transition |0>-|-1>
    bool remove_net_rotation = true;
};

struct FloquetResult {
    Mat H_eff;          // (i/T) log of the (net-rotation-corrected) cycle unitary
    Mat cycle_unitary;  // before net-rotation removal
    bool branch_flag = false; // an eigenphase within 1e-6 of +-pi
    double metric = 0;  // Frobenius norm of traceless H_eff
};

// H_single: the one-spin Hamiltonian (dim x dim) applied to every spin;
// two-body interaction added per `spec` for n_spins=2.
FloquetResult floquet_effective_hamiltonian(const PulseSequence& seq,
                                            const Mat& H_single,
                                            const HamiltonianSpec& spec,
                                            const FloquetOptions& opt);

// log-log slope of metric vs disorder scale over the given scales.
struct ScalingFit {
    std::vector<double> scales, metrics;
    double exponent = 0;
};
// term: "h" (Sz disorder) or "D" (traceless (Sz)^2 disorder).
ScalingFit disorder_scaling(const PulseSequence& seq, const std::string& term,
                            const std::vector<double>& scales, int n_spins = 1);

struct RotationErrorProbe {
    std::vector<double> epsilons, metrics;
    // symmetric slope (m(+d)+m(-d))/(2d) at the smallest grid step: small for
    // quadratic (robust) response, ~|dm/de| for linear response.
    double derivative_at_zero = 0;
    double scale = 0; // natural comparison scale: total rotation angle / T
};
// mode: "common", "t1", "t2" (which transitions receive the error).
RotationErrorProbe rotation_error_scan(const PulseSequence& seq,
                                       const std::string& mode,
                                       const std::vector<double>& grid,
                                       const HamiltonianSpec& spec = {});

} // namespace qseq
