#include "qseq/aht.hpp"

#include <cmath>

namespace qseq {

EffectiveHamiltonianReport average_hamiltonian(const PulseSequence& seq,
                                               const HamiltonianSpec& spec,
                                               bool finite_pulses) {
    const int d = seq.dim;
    auto ops = spin_operators(d);
    const Mat dz_op = ops.Sz;
    const Mat dz2_op = traceless(Mat(ops.Sz * ops.Sz));
    const Mat int_op = two_body_interaction(spec);

    EffectiveHamiltonianReport rep;
    Mat dz_free = Mat::Zero(d, d), dz2_free = Mat::Zero(d, d);
    Mat dz_pulse = Mat::Zero(d, d), dz2_pulse = Mat::Zero(d, d);
    Mat int_free = Mat::Zero(d * d, d * d), int_pulse = Mat::Zero(d * d, d * d);

    double T = 0;
    for (const auto& s : seq.segments) {
        T += s.kind == Segment::Kind::free_evolution
                 ? s.duration
                 : (finite_pulses ? s.pulse.duration : 0.0);
    }
    if (T <= 0) throw std::invalid_argument("average_hamiltonian: zero cycle time");

    Mat U = Mat::Identity(d, d);
    for (const auto& s : seq.segments) {
        if (s.kind == Segment::Kind::free_evolution) {
            Mat UU = kron(U, U);
            dz_free += s.duration * (U.adjoint() * dz_op * U);
            dz2_free += s.duration * (U.adjoint() * dz2_op * U);
            int_free += s.duration * (UU.adjoint() * int_op * UU);
        } else {
            const Mat G = s.pulse.generator(d);
            if (finite_pulses && s.pulse.duration > 0) {
                const double th = s.pulse.rotation_angle;
                Mat avg1_z = pulse_average_operator(G, dz_op, th);
                Mat avg1_z2 = pulse_average_operator(G, dz2_op, th);
                Mat G2 = kron(G, Mat::Identity(d, d)) + kron(Mat::Identity(d, d), G);
                Mat avg2 = pulse_average_operator(G2, int_op, th);
                Mat UU = kron(U, U);
                dz_pulse += s.pulse.duration * (U.adjoint() * avg1_z * U);
                dz2_pulse += s.pulse.duration * (U.adjoint() * avg1_z2 * U);
                int_pulse += s.pulse.duration * (UU.adjoint() * avg2 * UU);
            }
            U = s.pulse.unitary(d) * U;
        }
    }
    rep.cycle_time = T;
    rep.free_part["dz"] = dz_free / T;
    rep.free_part["dz2"] = dz2_free / T;
    rep.free_part["int2"] = int_free / T;
    rep.pulse_part["dz"] = dz_pulse / T;
    rep.pulse_part["dz2"] = dz2_pulse / T;
    rep.pulse_part["int2"] = int_pulse / T;
    for (const auto& key : {"dz", "dz2", "int2"})
        rep.coefficient_norm[key] =
            traceless_norm(Mat(rep.free_part[key] + rep.pulse_part[key]));
    return rep;
}

FloquetResult floquet_effective_hamiltonian(const PulseSequence& seq,
                                            const Mat& H_single,
                                            const HamiltonianSpec& spec,
                                            const FloquetOptions& opt) {
    const int d = seq.dim;
    if (opt.n_spins != 1 && opt.n_spins != 2)
        throw std::invalid_argument("floquet oracle: n_spins must be 1 or 2");
    const int dim = opt.n_spins == 1 ? d : d * d;
    const Mat Id = Mat::Identity(d, d);

    Mat H_sys;
    if (opt.n_spins == 1) {
        H_sys = H_single;
    } else {
        H_sys = kron(H_single, Id) + kron(Id, H_single) +
                spec.coupling_scale * two_body_interaction(spec);
    }

    auto lift = [&](const Mat& A) {
        return opt.n_spins == 1 ? A : Mat(kron(A, Id) + kron(Id, A));
    };

    Mat U = Mat::Identity(dim, dim);
    double T = 0;
    for (const auto& s : seq.segments) {
        if (s.kind == Segment::Kind::free_evolution) {
            U = exp_i_herm(H_sys, -s.duration) * U;
            T += s.duration;
        } else {
            const double tp = s.pulse.duration;
            if (tp <= 0) throw std::invalid_argument("floquet oracle: zero-width pulse");
            Mat G = s.pulse.generator_with_error(d, opt.eps1, opt.eps2);
            Mat H = H_sys + (s.pulse.rotation_angle / tp) * lift(G);
            U = exp_i_herm(H, -tp) * U;
            T += tp;
        }
    }

    FloquetResult res;
    res.cycle_unitary = U;
    Mat Ucorr = U;
    if (opt.remove_net_rotation) {
        Mat N = opt.n_spins == 1 ? seq.net_rotation
                                 : kron(seq.net_rotation, seq.net_rotation);
        Ucorr = N.adjoint() * U;
    }
    Mat H = log_unitary(Ucorr, &res.branch_flag);
    res.H_eff = H / T;
    res.metric = traceless_norm(res.H_eff);
    return res;
}

ScalingFit disorder_scaling(const PulseSequence& seq, const std::string& term,
                            const std::vector<double>& scales, int n_spins) {
    auto ops = spin_operators(seq.dim);
    Mat base;
    if (term == "h")
        base = ops.Sz;
    else if (term == "D")
        base = traceless(Mat(ops.Sz * ops.Sz));
    else
        throw std::invalid_argument("disorder_scaling: term must be h or D");

    ScalingFit fit;
    fit.scales = scales;
    HamiltonianSpec spec;
    spec.model = seq.dim == 2 ? ModelKind::spin_half_dipolar : ModelKind::spin1_dipolar;
    FloquetOptions opt;
    opt.n_spins = n_spins;
    for (double s : scales) {
        auto r = floquet_effective_hamiltonian(seq, Mat(s * base), spec, opt);
        fit.metrics.push_back(r.metric);
    }
    // least-squares slope of log(metric) vs log(scale)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(scales.size());
    for (int i = 0; i < n; ++i) {
        double x = std::log(scales[i]);
        double y = std::log(std::max(fit.metrics[i], 1e-300));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

RotationErrorProbe rotation_error_scan(const PulseSequence& seq,
                                       const std::string& mode,
                                       const std::vector<double>& grid,
                                       const HamiltonianSpec& spec) {
    RotationErrorProbe probe;
    probe.epsilons = grid;
    const Mat H0 = Mat::Zero(seq.dim, seq.dim);
    for (double e : grid) {
        FloquetOptions opt;
        if (mode == "common") {
            opt.eps1 = e; opt.eps2 = e;
        } else if (mode == "t1") {
            opt.eps1 = e;
        } else if (mode == "t2") {
            opt.eps2 = e;
        } else {
            throw std::invalid_argument("rotation_error_scan: unknown mode " + mode);
        }
        auto r = floquet_effective_hamiltonian(seq, H0, spec, opt);
        probe.metrics.push_back(r.metric);
    }
    double total_angle = 0;
    for (const auto& s : seq.segments)
        if (s.kind == Segment::Kind::pulse) total_angle += std::abs(s.pulse.rotation_angle);
    probe.scale = total_angle / seq.cycle_time();

    // symmetric slope at the smallest positive delta in the grid; the metric
    // at -delta is reused when present, otherwise evaluated here
    double best = 0;
    bool found = false;
    for (double e : grid)
        if (e > 0 && (!found || e < best)) { best = e; found = true; }
    if (found) {
        double mp = 0, mm = -1;
        for (size_t i = 0; i < grid.size(); ++i) {
            if (std::abs(grid[i] - best) < 1e-18) mp = probe.metrics[i];
            if (std::abs(grid[i] + best) < 1e-18) mm = probe.metrics[i];
        }
        if (mm < 0) {
            FloquetOptions opt;
            if (mode == "common") {
                opt.eps1 = -best; opt.eps2 = -best;
            } else if (mode == "t1") {
                opt.eps1 = -best;
            } else {
                opt.eps2 = -best;
            }
            mm = floquet_effective_hamiltonian(seq, H0, spec, opt).metric;
        }
        probe.derivative_at_zero = (mp + mm) / (2 * best);
    }
    return probe;
}

} // namespace qseq
