#pragma once

// Exact dense state-vector simulation of interacting spin ensembles under a
// pulse sequence: the decoupling decay experiment and the scar-dynamics
// experiment.

#include "qseq/aht.hpp"
#include "qseq/library.hpp"

#include <cstdint>

namespace qseq {

struct EnsembleConfig {
    int n_spins = 4;      // decay experiment
    int n1 = 3, n2 = 3;   // scar experiment groups
    HamiltonianSpec spec;
    std::uint64_t seed = 0;
    int realizations = 1;
    int dim_cap = 6561;   // 3^8
};

// Deterministic per-realization RNG stream (counter-based splitting).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

// One disorder/coupling realization.
struct SpinSystem {
    int n = 0;
    int dim_site = 3;
    Eigen::VectorXd h, D;   // per-site Sz and (Sz)^2 disorder, rad/s
    Eigen::MatrixXd J;      // symmetric coupling matrix, rad/s
    ModelKind model = ModelKind::spin1_dipolar;
    int n1 = 0;             // scar_bipartite: size of the first group

    Mat static_hamiltonian() const; // no drive
};

SpinSystem sample_system(const EnsembleConfig& cfg, std::uint64_t realization);

// Apply a single-site operator to a dense state vector in place.
void apply_site(Vec& state, const Mat& M, int site, int n, int dim_site);

// Per-segment propagators of one sequence cycle on the full ensemble (all
// spins driven identically). Dense eigen-exponentiation.
std::vector<Mat> segment_propagators(const PulseSequence& seq, const SpinSystem& sys);
// Product of the segment propagators (last segment leftmost).
Mat cycle_unitary(const PulseSequence& seq, const SpinSystem& sys);

struct ExperimentResult {
    std::vector<int> cycles;
    std::vector<double> time_ns;
    std::vector<std::string> state_labels;
    // signal[state][grid point]
    std::vector<std::vector<double>> signal;
    std::vector<double> mean; // over states (and realizations)
    // scar experiment only: overlap with the scar manifold per state/grid point
    std::vector<std::vector<double>> scar_overlap;
};

// Prepare |0> -> target on one site; deterministic completion of the basis.
Mat prep_unitary(const Vec& target);

// Decay protocol: three coherent-superposition initial product states,
// inverse preparation and net-rotation correction, S = (3 P0 - 1)/2 averaged
// over spins; mean over states and realizations.
ExperimentResult decay_experiment(const PulseSequence& seq,
                                  const EnsembleConfig& cfg,
                                  const std::vector<int>& cycle_grid);

// Scar ladder operators and reference states on n1 + n2 spins.
Mat scar_ladder_plus(int n1, int n2);              // J+ = 1/2 sum a_i (S_i^+)^2
Vec scar_ladder_state(int n1, int n2, int nraise); // normalized (J+)^n |-1...-1>
Mat scar_projector(int n1, int n2); // maximal-spin subspace, group 2 z-rotated
// Target model: sum_{i in g1, j in g2} (J/6)(SxSx + SySy) + h sum_i Sz_i.
Mat scar_target_hamiltonian(int n1, int n2, double J, double h);
// Zeroth-order average of the engineered schedule (ideal pulses): dwell-frame
// average of the intergroup Sz Sz coupling plus the stroboscopic field kick.
Mat scar_engineered_hamiltonian(int n1, int n2, double J, double h);

// Five initial states of the scar experiment, evolved under the two-group
// pulse schedule with the per-cycle field kick exp(-i h T sum Sz).
ExperimentResult scar_experiment(const EnsembleConfig& cfg,
                                 const std::vector<int>& cycle_grid);

} // namespace qseq
