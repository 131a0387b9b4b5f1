#include "qseq/manybody.hpp"

#include <cmath>
#include <map>
#include <random>

namespace qseq {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over (seed, stream)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

Mat op_on_site(const Mat& op, int site, int n, int d) {
    Mat out = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k)
        out = kron(out, k == site ? op : Mat(Mat::Identity(d, d)));
    return out;
}

Mat E3m(int i, int j) {
    Mat M = Mat::Zero(3, 3);
    M(i, j) = 1;
    return M;
}

// Pair interaction as a sum of single-site operator products; the kron sum
// reproduces two_body_interaction exactly (tested).
std::vector<std::pair<Mat, Mat>> two_body_terms(ModelKind model) {
    if (model == ModelKind::spin_half_dipolar) {
        auto ops = spin_operators(2);
        return {{ops.Sx, ops.Sx}, {ops.Sy, ops.Sy}, {Mat(-2.0 * ops.Sz), ops.Sz}};
    }
    auto ops = spin_operators(3);
    if (model == ModelKind::scar_bipartite) return {{ops.Sz, ops.Sz}};
    std::vector<std::pair<Mat, Mat>> terms = {{ops.Sz, ops.Sz}};
    for (auto [a, b] : {std::pair<int, int>{0, 1}, {1, 2}}) {
        Mat X = E3m(a, b) + E3m(b, a);
        Mat Y = cd(0, -1) * E3m(a, b) + cd(0, 1) * E3m(b, a);
        terms.push_back({Mat(-0.25 * X), X});
        terms.push_back({Mat(-0.25 * Y), Y});
    }
    return terms;
}

} // namespace

Mat SpinSystem::static_hamiltonian() const {
    const int d = dim_site;
    const long dim = static_cast<long>(std::pow(d, n));
    auto ops = spin_operators(d);
    Mat H = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        if (h(i) != 0) H += h(i) * op_on_site(ops.Sz, i, n, d);
        if (D(i) != 0) H += D(i) * op_on_site(Mat(ops.Sz * ops.Sz), i, n, d);
    }
    auto terms = two_body_terms(model);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (J(i, j) == 0) continue;
            for (const auto& [A, B] : terms)
                H += J(i, j) * (op_on_site(A, i, n, d) * op_on_site(B, j, n, d));
        }
    return H;
}

SpinSystem sample_system(const EnsembleConfig& cfg, std::uint64_t realization) {
    cfg.spec.validate();
    SpinSystem sys;
    sys.model = cfg.spec.model;
    const bool scar = cfg.spec.model == ModelKind::scar_bipartite;
    sys.n = scar ? cfg.n1 + cfg.n2 : cfg.n_spins;
    sys.n1 = scar ? cfg.n1 : 0;
    sys.dim_site = cfg.spec.model == ModelKind::spin_half_dipolar ? 2 : 3;
    if (std::pow(sys.dim_site, sys.n) > cfg.dim_cap)
        throw std::invalid_argument("sample_system: dimension cap exceeded");

    std::mt19937_64 rng(split_seed(cfg.seed, realization));
    std::normal_distribution<double> gauss(0.0, 1.0);
    sys.h.resize(sys.n);
    sys.D.resize(sys.n);
    for (int i = 0; i < sys.n; ++i) {
        sys.h(i) = cfg.spec.disorder_z > 0 ? cfg.spec.disorder_z * gauss(rng) : 0.0;
        sys.D(i) = cfg.spec.disorder_z2 > 0 ? cfg.spec.disorder_z2 * gauss(rng) : 0.0;
    }
    sys.J = Eigen::MatrixXd::Zero(sys.n, sys.n);
    for (int i = 0; i < sys.n; ++i)
        for (int j = i + 1; j < sys.n; ++j) {
            if (scar && !(i < sys.n1 && j >= sys.n1)) continue; // intergroup only
            double v;
            switch (cfg.spec.coupling_mode) {
                case CouplingMode::uniform: v = cfg.spec.coupling_scale; break;
                case CouplingMode::gaussian:
                    v = cfg.spec.coupling_scale * gauss(rng);
                    break;
                default: v = cfg.spec.coupling_matrix(i, j); break;
            }
            sys.J(i, j) = sys.J(j, i) = v;
        }
    return sys;
}

void apply_site(Vec& state, const Mat& M, int site, int n, int d) {
    const long dim = state.size();
    long stride = 1;
    for (int k = site + 1; k < n; ++k) stride *= d;
    Vec tmp(d);
    for (long base = 0; base < dim; ++base) {
        long digit = (base / stride) % d;
        if (digit != 0) continue;
        for (int a = 0; a < d; ++a) tmp(a) = state(base + a * stride);
        for (int a = 0; a < d; ++a) {
            cd v = 0;
            for (int b = 0; b < d; ++b) v += M(a, b) * tmp(b);
            state(base + a * stride) = v;
        }
    }
}

std::vector<Mat> segment_propagators(const PulseSequence& seq, const SpinSystem& sys) {
    const int d = sys.dim_site;
    if (d != seq.dim)
        throw std::invalid_argument("segment_propagators: sequence/system dim mismatch");
    Mat H0 = sys.static_hamiltonian();
    std::vector<Mat> segs;
    std::map<double, Mat> dwell_cache;
    for (const auto& s : seq.segments) {
        if (s.kind == Segment::Kind::free_evolution) {
            auto it = dwell_cache.find(s.duration);
            if (it == dwell_cache.end())
                it = dwell_cache.emplace(s.duration, exp_i_herm(H0, -s.duration)).first;
            segs.push_back(it->second);
        } else {
            Mat G = s.pulse.generator(d);
            Mat Gtot = Mat::Zero(H0.rows(), H0.cols());
            for (int i = 0; i < sys.n; ++i) Gtot += op_on_site(G, i, sys.n, d);
            Mat H = H0 + (s.pulse.rotation_angle / s.pulse.duration) * Gtot;
            segs.push_back(exp_i_herm(H, -s.pulse.duration));
        }
    }
    return segs;
}

Mat cycle_unitary(const PulseSequence& seq, const SpinSystem& sys) {
    auto segs = segment_propagators(seq, sys);
    Mat U = Mat::Identity(segs[0].rows(), segs[0].cols());
    for (const auto& S : segs) U = S * U;
    return U;
}

Mat prep_unitary(const Vec& target) {
    const int d = static_cast<int>(target.size());
    if (std::abs(target.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("prep_unitary: target not normalized");
    // column for |0> (index 1 for spin-1, index d-1-... use middle for d=3,
    // index 0 for d=2), completed by Gram-Schmidt over the standard basis.
    const int zero_index = d == 3 ? 1 : 0;
    Mat V = Mat::Zero(d, d);
    V.col(zero_index) = target;
    int next = 0;
    for (int c = 0; c < d; ++c) {
        if (c == zero_index) continue;
        // take the next standard basis vector not (numerically) spanned yet
        for (; next < d; ++next) {
            Vec v = Vec::Zero(d);
            v(next) = 1;
            for (int p = 0; p < d; ++p) {
                if (p != zero_index && p >= c && V.col(p).norm() == 0) continue;
                if (V.col(p).norm() > 0) v -= (V.col(p).adjoint() * v)(0) * V.col(p);
            }
            if (v.norm() > 1e-8) {
                V.col(c) = v / v.norm();
                ++next;
                break;
            }
        }
    }
    if (!is_unitary(V)) throw std::logic_error("prep_unitary: completion failed");
    return V;
}

namespace {

Vec product_state(const std::vector<Vec>& site_states) {
    Vec st = Vec::Ones(1);
    for (const auto& s : site_states) {
        Vec nxt(st.size() * s.size());
        for (long i = 0; i < st.size(); ++i)
            for (long j = 0; j < s.size(); ++j) nxt(i * s.size() + j) = st(i) * s(j);
        st = nxt;
    }
    return st;
}

double population_zero(const Vec& state, int n, int d) {
    // mean over sites of the population in |0> (local index 1 for d=3)
    const int zero_index = d == 3 ? 1 : 0;
    double acc = 0;
    for (int site = 0; site < n; ++site) {
        long stride = 1;
        for (int k = site + 1; k < n; ++k) stride *= d;
        double p = 0;
        for (long idx = 0; idx < state.size(); ++idx)
            if ((idx / stride) % d == zero_index) p += std::norm(state(idx));
        acc += p;
    }
    return acc / n;
}

} // namespace

ExperimentResult decay_experiment(const PulseSequence& seq,
                                  const EnsembleConfig& cfg,
                                  const std::vector<int>& cycle_grid) {
    const int d = seq.dim;
    if (d != 3) throw std::invalid_argument("decay_experiment: spin-1 sequences only");
    const double T = seq.cycle_time();
    const double s2 = 1.0 / std::sqrt(2.0);
    // (|0>+|-1>)/sqrt2, (|0>+|+1>)/sqrt2, (|+1>+|-1>)/sqrt2
    std::vector<Vec> targets(3, Vec::Zero(3));
    targets[0](1) = s2; targets[0](2) = s2;
    targets[1](0) = s2; targets[1](1) = s2;
    targets[2](0) = s2; targets[2](2) = s2;
    std::vector<std::string> labels = {"0_minus", "0_plus", "plus_minus"};
    std::vector<Mat> preps;
    for (const auto& t : targets) preps.push_back(prep_unitary(t));

    ExperimentResult res;
    res.cycles = cycle_grid;
    res.state_labels = labels;
    for (int c : cycle_grid) res.time_ns.push_back(c * T * 1e9);
    res.signal.assign(3, std::vector<double>(cycle_grid.size(), 0.0));

    for (int r = 0; r < cfg.realizations; ++r) {
        SpinSystem sys = sample_system(cfg, r);
        auto segs = segment_propagators(seq, sys);
        for (int si = 0; si < 3; ++si) {
            std::vector<Vec> sites(sys.n, Vec(preps[si].col(1)));
            Vec state = product_state(sites);
            Mat netpow = Mat::Identity(3, 3);
            int done = 0;
            for (size_t gi = 0; gi < cycle_grid.size(); ++gi) {
                while (done < cycle_grid[gi]) {
                    for (const auto& S : segs) state = S * state;
                    netpow = seq.net_rotation * netpow;
                    ++done;
                }
                if (std::abs(state.norm() - 1.0) > 1e-9)
                    throw std::runtime_error("decay_experiment: norm drift");
                Vec meas = state;
                Mat corr = preps[si].adjoint() * netpow.adjoint();
                for (int site = 0; site < sys.n; ++site)
                    apply_site(meas, corr, site, sys.n, 3);
                double p0 = population_zero(meas, sys.n, 3);
                res.signal[si][gi] += (3 * p0 - 1) / 2;
            }
        }
    }
    for (auto& row : res.signal)
        for (auto& v : row) v /= cfg.realizations;
    res.mean.assign(cycle_grid.size(), 0.0);
    for (size_t gi = 0; gi < cycle_grid.size(); ++gi) {
        for (int si = 0; si < 3; ++si) res.mean[gi] += res.signal[si][gi];
        res.mean[gi] /= 3.0;
    }
    return res;
}

// ---------------------------------------------------------------------------
// scar experiment

Mat scar_ladder_plus(int n1, int n2) {
    const int n = n1 + n2;
    Mat Sp2 = Mat::Zero(3, 3);
    Sp2(0, 2) = 2.0; // (S^+)^2
    const long dim = static_cast<long>(std::pow(3, n));
    Mat J = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i)
        J += 0.5 * (i < n1 ? 1.0 : -1.0) * op_on_site(Sp2, i, n, 3);
    return J;
}

Vec scar_ladder_state(int n1, int n2, int nraise) {
    const int n = n1 + n2;
    Vec psi = Vec::Zero(static_cast<long>(std::pow(3, n)));
    psi(psi.size() - 1) = 1.0; // |-1...-1> = last basis state (digits all 2)
    Mat Jp = scar_ladder_plus(n1, n2);
    for (int k = 0; k < nraise; ++k) {
        psi = Jp * psi;
        double nn = psi.norm();
        if (nn < 1e-12) throw std::invalid_argument("scar_ladder_state: annihilated");
        psi /= nn;
    }
    return psi;
}

Mat scar_projector(int n1, int n2) {
    // The ladder operator J+ acts on the {|+1>, |-1>} two-level subspace of
    // each site as a collective spin raising operator (group 2 z-rotated by
    // pi via the sign a_i = -1). The scar manifold is the maximal-spin
    // subspace of that effective algebra: the n1 + n2 + 1 mutually orthogonal
    // ladder states, with no |0> component anywhere.
    const int n = n1 + n2;
    const long dim = static_cast<long>(std::pow(3, n));
    Mat P = Mat::Zero(dim, dim);
    for (int k = 0; k <= n; ++k) {
        Vec b = scar_ladder_state(n1, n2, k);
        P += b * b.adjoint();
    }
    return P;
}

Mat scar_target_hamiltonian(int n1, int n2, double J, double h) {
    const int n = n1 + n2;
    const long dim = static_cast<long>(std::pow(3, n));
    auto ops = spin_operators(3);
    Mat H = Mat::Zero(dim, dim);
    for (int i = 0; i < n1; ++i)
        for (int j = n1; j < n; ++j)
            H += (J / 6.0) * (op_on_site(ops.Sx, i, n, 3) * op_on_site(ops.Sx, j, n, 3) +
                              op_on_site(ops.Sy, i, n, 3) * op_on_site(ops.Sy, j, n, 3));
    for (int i = 0; i < n; ++i) H += h * op_on_site(ops.Sz, i, n, 3);
    return H;
}

Mat scar_engineered_hamiltonian(int n1, int n2, double J, double h) {
    const auto& two = scar_sequences();
    auto tr1 = two.group1.frame_trace();
    auto tr2 = two.group2.frame_trace();
    if (tr1.frames.size() != tr2.frames.size())
        throw std::logic_error("scar sequences: mismatched dwell grids");
    const int n = n1 + n2;
    const long dim = static_cast<long>(std::pow(3, n));
    Mat H = Mat::Zero(dim, dim);
    const double w = 1.0 / static_cast<double>(tr1.frames.size());
    for (size_t k = 0; k < tr1.frames.size(); ++k)
        for (int i = 0; i < n1; ++i)
            for (int j = n1; j < n; ++j)
                H += w * J * (op_on_site(tr1.frames[k], i, n, 3) *
                              op_on_site(tr2.frames[k], j, n, 3));
    auto ops = spin_operators(3);
    for (int i = 0; i < n; ++i) H += h * op_on_site(ops.Sz, i, n, 3);
    return H;
}

ExperimentResult scar_experiment(const EnsembleConfig& cfg,
                                 const std::vector<int>& cycle_grid) {
    if (cfg.spec.model != ModelKind::scar_bipartite)
        throw std::invalid_argument("scar_experiment: model must be scar_bipartite");
    const auto& two = scar_sequences();
    SpinSystem sys = sample_system(cfg, 0);
    const int n = sys.n;
    const long dim = static_cast<long>(std::pow(3, n));
    const double T = two.group1.cycle_time();

    // one-cycle propagator: paired segments of the two group schedules, then
    // the stroboscopic field kick
    Mat H0 = sys.static_hamiltonian();
    Mat U = Mat::Identity(dim, dim);
    std::map<double, Mat> dwell_cache;
    if (two.group1.segments.size() != two.group2.segments.size())
        throw std::logic_error("scar sequences: segment grids differ");
    for (size_t k = 0; k < two.group1.segments.size(); ++k) {
        const auto& s1 = two.group1.segments[k];
        const auto& s2 = two.group2.segments[k];
        if (s1.kind != s2.kind)
            throw std::logic_error("scar sequences: segment kinds differ");
        if (s1.kind == Segment::Kind::free_evolution) {
            auto it = dwell_cache.find(s1.duration);
            if (it == dwell_cache.end())
                it = dwell_cache.emplace(s1.duration, exp_i_herm(H0, -s1.duration)).first;
            U = it->second * U;
        } else {
            Mat G1 = s1.pulse.generator(3), G2 = s2.pulse.generator(3);
            Mat Gtot = Mat::Zero(dim, dim);
            for (int i = 0; i < sys.n1; ++i) Gtot += op_on_site(G1, i, n, 3);
            for (int i = sys.n1; i < n; ++i) Gtot += op_on_site(G2, i, n, 3);
            Mat H = H0 + (s1.pulse.rotation_angle / s1.pulse.duration) * Gtot;
            U = exp_i_herm(H, -s1.pulse.duration) * U;
        }
    }
    if (cfg.spec.scar_field != 0) {
        // diagonal kick exp(-i h T sum Sz)
        Vec kick(dim);
        for (long idx = 0; idx < dim; ++idx) {
            int mz = 0;
            long rest = idx;
            for (int s = 0; s < n; ++s) {
                int digit = static_cast<int>(rest % 3);
                mz += 1 - digit; // digits 0,1,2 -> m = +1,0,-1
                rest /= 3;
            }
            kick(idx) = std::exp(cd(0, -cfg.spec.scar_field * T * mz));
        }
        U = kick.asDiagonal() * U;
    }

    // five initial states (group1 target, group2 target)
    const double s2c = 1.0 / std::sqrt(2.0);
    Vec pm(3), pmm(3), p1(3), m1(3), z0(3);
    pm.setZero(); pm(0) = s2c; pm(2) = s2c;        // (|+1>+|-1>)/sqrt2
    pmm.setZero(); pmm(0) = s2c; pmm(2) = -s2c;    // (|+1>-|-1>)/sqrt2
    p1.setZero(); p1(0) = 1;                       // |+1>
    m1.setZero(); m1(2) = 1;                       // |-1>
    z0.setZero(); z0(1) = 1;                       // |0>
    struct Init { std::string label; Vec g1, g2; };
    std::vector<Init> inits = {
        {"pm_pmm", pm, pmm}, {"p1_p1", p1, p1}, {"pm_pm", pm, pm},
        {"p1_m1", p1, m1},   {"z0_z0", z0, z0}};

    Mat Pscar = scar_projector(cfg.n1, cfg.n2);

    ExperimentResult res;
    res.cycles = cycle_grid;
    for (int c : cycle_grid) res.time_ns.push_back(c * T * 1e9);
    res.signal.assign(inits.size(), std::vector<double>(cycle_grid.size(), 0.0));
    res.scar_overlap.assign(inits.size(),
                            std::vector<double>(cycle_grid.size(), 0.0));

    for (size_t si = 0; si < inits.size(); ++si) {
        res.state_labels.push_back(inits[si].label);
        Mat V1 = prep_unitary(inits[si].g1), V2 = prep_unitary(inits[si].g2);
        std::vector<Vec> sites;
        for (int i = 0; i < cfg.n1; ++i) sites.push_back(Vec(V1.col(1)));
        for (int i = 0; i < cfg.n2; ++i) sites.push_back(Vec(V2.col(1)));
        Vec state = product_state(sites);
        Mat net1 = Mat::Identity(3, 3), net2 = Mat::Identity(3, 3);
        int done = 0;
        for (size_t gi = 0; gi < cycle_grid.size(); ++gi) {
            while (done < cycle_grid[gi]) {
                state = U * state;
                net1 = two.group1.net_rotation * net1;
                net2 = two.group2.net_rotation * net2;
                ++done;
            }
            if (std::abs(state.norm() - 1.0) > 1e-9)
                throw std::runtime_error("scar_experiment: norm drift");
            Vec meas = state;
            Mat c1 = V1.adjoint() * net1.adjoint();
            Mat c2 = V2.adjoint() * net2.adjoint();
            for (int i = 0; i < cfg.n1; ++i) apply_site(meas, c1, i, n, 3);
            for (int i = cfg.n1; i < n; ++i) apply_site(meas, c2, i, n, 3);
            double p0 = population_zero(meas, n, 3);
            res.signal[si][gi] = (3 * p0 - 1) / 2;
            res.scar_overlap[si][gi] = (state.adjoint() * Pscar * state)(0).real();
        }
    }
    res.mean.assign(cycle_grid.size(), 0.0);
    for (size_t gi = 0; gi < cycle_grid.size(); ++gi) {
        for (size_t si = 0; si < inits.size(); ++si)
            res.mean[gi] += res.signal[si][gi];
        res.mean[gi] /= static_cast<double>(inits.size());
    }
    return res;
}

} // namespace qseq
