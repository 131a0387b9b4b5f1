#pragma once

// Decoupling weight search: transformed Hamiltonian terms per frame, the LP
// feasibility step over stacked Gell-Mann coefficient equations, and the
// pseudo-Bloch-sphere identities.

#include "qseq/lp.hpp"
#include "qseq/spin.hpp"

namespace qseq {

struct TransformedTerms {
    Mat dz;    // U^dag Sz U
    Mat dz2;   // traceless part of U^dag (Sz)^2 U
    Mat int2;  // traceless part of (U kron U)^dag H_int (U kron U)
};

TransformedTerms transformed_terms(const Mat& frame, const Mat& unitary,
                                   const HamiltonianSpec& spec);

struct DecouplingTarget {
    bool kill_disorder_z = true;
    bool kill_disorder_z2 = true;
    bool kill_interaction = true;
    // When set, the interaction constraint becomes "proportional to pattern"
    // instead of zero (pattern: traceless two-body operator).
    bool interaction_proportional = false;
    Mat interaction_pattern;
};

struct WeightedFrameSet {
    std::vector<Mat> frames;
    std::vector<Mat> unitaries;
    std::vector<double> weights;
    bool uniform = false; // the uniform solution verifies directly
    double residual = 0;  // coefficient-norm residual of the returned weights
};

struct SolveResult {
    bool feasible = false;
    WeightedFrameSet set;
    double infeasibility_certificate = 0; // phase-1 objective when infeasible
};

SolveResult solve_weights(const std::vector<Mat>& frames,
                          const std::vector<Mat>& unitaries,
                          const HamiltonianSpec& spec,
                          const DecouplingTarget& target);

// Independent re-verification by dense summation (not via the LP tableau).
double verify_weights(const std::vector<Mat>& frames,
                      const std::vector<Mat>& unitaries,
                      const std::vector<double>& weights,
                      const HamiltonianSpec& spec, const DecouplingTarget& target);

// Pseudo-Bloch-sphere check: S1^2 + S2^2 + S3^2 proportional to identity.
bool bloch_triple_ok(const Mat& S1, const Mat& S2, const Mat& S3,
                     double tol = 1e-10);

// All partitions of the six +- axis pairs of a 12-frame set into two triples
// whose unsigned representatives both satisfy the pseudo-Bloch condition.
// axes: 6 representative frames (one per +- pair). Returns the list of
// partitions as index triples for the first block.
std::vector<std::array<int, 3>> bloch_sphere_partitions(const std::vector<Mat>& axes);

} // namespace qseq
