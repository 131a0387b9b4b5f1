#include "qseq/sensing.hpp"

#include <algorithm>

namespace qseq {

static SensingReport finish(const std::string& name, const Mat& H) {
    SensingReport rep;
    rep.name = name;
    rep.H_sense = H;
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    rep.eigenvalues = es.eigenvalues();
    const int n = static_cast<int>(rep.eigenvalues.size());
    rep.gap = rep.eigenvalues(n - 1) - rep.eigenvalues(0);
    rep.optimal_pair.resize(H.rows(), 2);
    rep.optimal_pair.col(0) = es.eigenvectors().col(0);
    rep.optimal_pair.col(1) = es.eigenvectors().col(n - 1);
    return rep;
}

static Mat weighted_average(const PulseSequence& seq, bool ideal_pulses,
                            const std::vector<double>* b_samples) {
    const int d = seq.dim;
    const Mat Sz = spin_operators(d).Sz;
    Mat H = Mat::Zero(d, d);
    Mat U = Mat::Identity(d, d);
    double T = 0;
    size_t seg_idx = 0;
    for (const auto& s : seq.segments) {
        double B = b_samples ? b_samples->at(seg_idx) : 1.0;
        if (s.kind == Segment::Kind::free_evolution) {
            H += B * s.duration * (U.adjoint() * Sz * U);
            T += s.duration;
        } else {
            if (!ideal_pulses && s.pulse.duration > 0) {
                Mat avg = pulse_average_operator(s.pulse.generator(d), Sz,
                                                 s.pulse.rotation_angle);
                H += B * s.pulse.duration * (U.adjoint() * avg * U);
                T += s.pulse.duration;
            }
            U = s.pulse.unitary(d) * U;
        }
        ++seg_idx;
    }
    if (T <= 0) throw std::invalid_argument("sensing_average: zero cycle time");
    return Mat(H / T);
}

SensingReport sensing_average(const PulseSequence& seq, bool ideal_pulses) {
    return finish(seq.name, weighted_average(seq, ideal_pulses, nullptr));
}

SensingReport sensing_average_waveform(const PulseSequence& seq,
                                       const std::vector<double>& b_samples) {
    if (b_samples.size() != seq.segments.size())
        throw std::invalid_argument("sensing_average_waveform: one sample per segment required");
    return finish(seq.name, weighted_average(seq, false, &b_samples));
}

std::vector<SensingReport> compare_sequences(const std::vector<PulseSequence>& seqs,
                                             bool ideal_pulses) {
    std::vector<SensingReport> out;
    for (const auto& s : seqs) {
        if (!out.empty() && out.front().H_sense.rows() != s.dim)
            throw std::invalid_argument("compare_sequences: mixed dimensions");
        out.push_back(sensing_average(s, ideal_pulses));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.gap != b.gap) return a.gap > b.gap;
        return a.name < b.name;
    });
    return out;
}

} // namespace qseq
