#pragma once

// Average sensing Hamiltonian of a sequence and its eigenvalue gap.

#include "qseq/sequence.hpp"

namespace qseq {

struct SensingReport {
    std::string name;
    Mat H_sense;           // time-averaged B(t) * frame(t), unit DC field
    RVec eigenvalues;      // ascending
    double gap = 0;        // lambda_max - lambda_min
    Mat optimal_pair;      // columns: eigenvectors of the extreme eigenvalues
};

// DC field (B = 1). ideal_pulses=true uses dwell-weighted frame averages only
// (the tabulated reference mode); false adds the exact in-pulse averages.
SensingReport sensing_average(const PulseSequence& seq, bool ideal_pulses = true);

// Piecewise-constant waveform: one B sample per segment (free and pulse), in
// segment order.
SensingReport sensing_average_waveform(const PulseSequence& seq,
                                       const std::vector<double>& b_samples);

// Descending by gap, ties broken by name.
std::vector<SensingReport> compare_sequences(const std::vector<PulseSequence>& seqs,
                                             bool ideal_pulses = true);

} // namespace qseq
