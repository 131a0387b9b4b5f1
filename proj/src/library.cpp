#include "qseq/library.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qseq {

namespace {

Mat m3(std::initializer_list<cd> entries) {
    Mat M(3, 3);
    int k = 0;
    for (cd v : entries) M(k / 3, k % 3) = v, ++k;
    return M;
}

const cd I(0, 1);
const double S2 = std::sqrt(2.0);

Mat E3(int i, int j) {
    Mat M = Mat::Zero(3, 3);
    M(i, j) = 1;
    return M;
}

} // namespace

Mat frame_by_name(const std::string& name) {
    static const std::map<std::string, Mat> table = [] {
        auto ops = spin_operators(3);
        Mat Sxt = m3({0, 1 / S2, 0, 1 / S2, 0, -1 / S2, 0, -1 / S2, 0});
        Mat Syt = m3({0, -I / S2, 0, I / S2, 0, I / S2, 0, -I / S2, 0});
        Mat Szt = m3({0, 0, -I, 0, 0, 0, I, 0, 0});
        std::map<std::string, Mat> t;
        for (auto& [nm, M] : std::map<std::string, Mat>{{"x", ops.Sx},
                                                        {"y", ops.Sy},
                                                        {"z", ops.Sz},
                                                        {"xt", Sxt},
                                                        {"yt", Syt},
                                                        {"zt", Szt}}) {
            t["+" + nm] = M;
            t["-" + nm] = -M;
        }
        return t;
    }();
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown frame name: " + name);
    return it->second;
}

const std::vector<std::string>& base12_cycle() {
    static const std::vector<std::string> c = {"+z",  "+x",  "+y",  "-z",  "-x",  "-y",
                                               "+zt", "+xt", "+yt", "-zt", "-xt", "-yt"};
    return c;
}

Mat symmetrized_interaction() {
    auto ops = spin_operators(3);
    auto X = [](int i, int j) { return Mat(E3(i, j) + E3(j, i)); };
    auto Y = [](int i, int j) { return Mat(-I * E3(i, j) + I * E3(j, i)); };
    auto HXY = [&](int i, int j) {
        return Mat(0.5 * (kron(X(i, j), X(i, j)) + kron(Y(i, j), Y(i, j))));
    };
    Mat Szp = m3({1, 0, 0, 0, -2, 0, 0, 0, 1}) / std::sqrt(3.0);
    return 0.5 * kron(ops.Sz, ops.Sz) + 0.5 * kron(Szp, Szp) -
           (HXY(0, 1) + HXY(1, 2) + HXY(0, 2)) / 3.0;
}

// ---------------------------------------------------------------------------
// named frame sets

static WeightedFrames make_uniform(std::vector<std::string> labels,
                                   std::vector<Mat> frames) {
    WeightedFrames w;
    w.labels = std::move(labels);
    w.frames = std::move(frames);
    const int n = static_cast<int>(w.frames.size());
    for (const auto& F : w.frames) w.unitaries.push_back(realizing_unitary(F));
    w.weights.assign(n, 1.0 / n);
    return w;
}

const WeightedFrames& frames12() {
    static const WeightedFrames w = [] {
        std::vector<std::string> labels;
        std::vector<Mat> frames;
        for (const char* nm : {"x", "y", "z", "xt", "yt", "zt"})
            for (const char* sg : {"+", "-"}) {
                labels.push_back(std::string(sg) + nm);
                frames.push_back(frame_by_name(labels.back()));
            }
        return make_uniform(labels, frames);
    }();
    return w;
}

const WeightedFrames& frames12_alternate() {
    static const WeightedFrames w = [] {
        std::vector<Mat> base = {
            m3({0, 0, 0, 0, 0, 1, 0, 1, 0}),
            m3({0, 0, 0, 0, 0, I, 0, -I, 0}),
            m3({0, 0, 1, 0, 0, 0, 1, 0, 0}),
            m3({0, 0, I, 0, 0, 0, -I, 0, 0}),
            m3({0, 1, 0, 1, 0, 0, 0, 0, 0}),
            m3({0, I, 0, -I, 0, 0, 0, 0, 0}),
        };
        std::vector<std::string> labels;
        std::vector<Mat> frames;
        for (size_t k = 0; k < base.size(); ++k) {
            labels.push_back("+a" + std::to_string(k));
            frames.push_back(base[k]);
            labels.push_back("-a" + std::to_string(k));
            frames.push_back(-base[k]);
        }
        return make_uniform(labels, frames);
    }();
    return w;
}

static Mat balanced_frame(double a, double b) {
    Mat F = Mat::Zero(3, 3);
    F(0, 1) = std::exp(I * a) / S2;
    F(1, 2) = std::exp(I * b) / S2;
    F(1, 0) = std::conj(F(0, 1));
    F(2, 1) = std::conj(F(1, 2));
    return F;
}

static Mat corner_frame(double al) {
    Mat F = Mat::Zero(3, 3);
    F(0, 2) = std::exp(I * al);
    F(2, 0) = std::conj(F(0, 2));
    return F;
}

const WeightedFrames& frames_cyl6() {
    static const WeightedFrames w = [] {
        std::vector<std::string> labels = {"Sz", "B1", "B2", "B3", "X", "B4"};
        std::vector<Mat> frames = {spin_operators(3).Sz,
                                   balanced_frame(0, PI / 2),
                                   balanced_frame(0, 3 * PI / 2),
                                   balanced_frame(-PI / 2, PI),
                                   corner_frame(0),
                                   balanced_frame(-PI / 2, 0)};
        return make_uniform(labels, frames);
    }();
    return w;
}

const WeightedFrames& frames_hord8() {
    static const WeightedFrames w = [] {
        const double r2 = std::sqrt(2.0) / 3, r5 = std::sqrt(5.0) / 3;
        Mat Sz = spin_operators(3).Sz;
        Mat F1p = m3({1, 0, 0, 0, -1.0 / 3, r2, 0, r2, -2.0 / 3});
        Mat F1m = m3({1, 0, 0, 0, -1.0 / 3, -r2, 0, -r2, -2.0 / 3});
        Mat F2p = m3({-1.0 / 3, 0, r2, 0, 1, 0, r2, 0, -2.0 / 3});
        Mat F2m = m3({-1.0 / 3, 0, -r2, 0, 1, 0, -r2, 0, -2.0 / 3});
        Mat F3p = m3({2.0 / 3, r5, 0, r5, -2.0 / 3, 0, 0, 0, 0});
        Mat F3m = m3({2.0 / 3, -r5, 0, -r5, -2.0 / 3, 0, 0, 0, 0});
        return make_uniform({"+Sz", "F1+", "F2+", "F3+", "-Sz", "F1-", "F2-", "F3-"},
                            {Sz, F1p, F2p, F3p, -Sz, F1m, F2m, F3m});
    }();
    return w;
}

static std::vector<Mat> nongeo_frame_list() {
    const double s = 1 / S2;
    return {
        m3({0, 1, 0, 1, 0, 0, 0, 0, 0}),                      // S1
        m3({0, 0, 0, 0, 0, 1, 0, 1, 0}),                      // S2
        m3({0, -I, 0, I, 0, 0, 0, 0, 0}),                     // S3
        m3({0, 0, 0, 0, 0, -I, 0, I, 0}),                     // S4
        s * m3({0, 1, 0, 1, 0, 1, 0, 1, 0}),                  // S5
        s * m3({0, 1, 0, 1, 0, -1, 0, -1, 0}),                // S6
        s * m3({0, -I, 0, I, 0, -I, 0, I, 0}),                // S7
        s * m3({0, -I, 0, I, 0, I, 0, -I, 0}),                // S8
        s * m3({0, -I, 0, I, 0, 1, 0, 1, 0}),                 // S9
        s * m3({0, -I, 0, I, 0, -1, 0, -1, 0}),               // S10
        s * m3({0, 1, 0, 1, 0, -I, 0, I, 0}),                 // S11
        s * m3({0, 1, 0, 1, 0, I, 0, -I, 0}),                 // S12
    };
}

const WeightedFrames& frames_nongeodesic12() {
    static const WeightedFrames w = [] {
        std::vector<std::string> labels;
        for (int k = 1; k <= 12; ++k) labels.push_back("S" + std::to_string(k));
        return make_uniform(labels, nongeo_frame_list());
    }();
    return w;
}

const WeightedFrames& frames_wahuha() {
    static const WeightedFrames w = [] {
        auto ops = spin_operators(2);
        return make_uniform({"z", "x", "y"}, {ops.Sz, ops.Sx, ops.Sy});
    }();
    return w;
}

// ---------------------------------------------------------------------------
// sequence construction helpers

namespace {

// Dwell tau at the current frame then a synthesized balanced pi/2 hop, for
// each frame name along a cyclic walk (hop k goes to walk[(k+1) % n]).
PulseSequence assemble_frame_cycle(const std::string& name,
                                   const std::vector<std::string>& walk,
                                   double tau, double tp) {
    PulseSequence seq;
    seq.name = name;
    seq.dim = 3;
    const Mat Sz = spin_operators(3).Sz;
    Mat U = Mat::Identity(3, 3);
    const size_t n = walk.size();
    for (size_t k = 0; k < n; ++k) {
        Mat here = frame_by_name(walk[k]);
        if (!frames_equal(U.adjoint() * Sz * U, here, 1e-8))
            throw std::logic_error("library: cycle assembly off frame at step " +
                                   std::to_string(k) + " of " + name);
        seq.segments.push_back(Segment::dwell(tau));
        Pulse p = synthesize_balanced_hop(U, frame_by_name(walk[(k + 1) % n]),
                                          {PI / 2, -PI / 2}, tp);
        seq.segments.push_back(Segment::of(p));
        U = p.unitary(3) * U;
    }
    seq.finalize();
    return seq;
}

std::string negate_name(const std::string& n) {
    return (n[0] == '+' ? "-" : "+") + n.substr(1);
}

// Robust interaction-decoupling sequence built as an echo-pair hierarchy:
// eight six-axis iterations, each axis hosting a spin-echo block (dwell,
// geodesic pi pulse through the following axis, dwell at the flipped frame),
// chained into one fully cyclic pi/2-hop walk. Four iterations traverse the
// axes forward, four in the reversed cyclic order, so both hop directions of
// every axis pair occur. The (dwell, intermediate) sign pattern runs through
// all four combinations once per half; junction signs are chosen so that the
// zeroth-order finite-pulse averages of the disorder terms cancel exactly
// (linear terms by sign balance, quadratic terms because every frame is an
// endpoint of exactly two hops and every axis hosts one pi pulse per
// iteration).
PulseSequence make_seqc(double tau, double tp) {
    static const std::vector<std::string> Lf = {"z", "x", "y", "zt", "xt", "yt"};
    static const std::vector<std::string> Lr = {"z", "yt", "xt", "zt", "y", "x"};
    static const int combos[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    static const int permF[4] = {0, 1, 2, 3}, permR[4] = {1, 2, 3, 0};
    struct Iter { const std::vector<std::string>* order; int p, q; };
    std::vector<Iter> iters;
    for (int m = 0; m < 4; ++m)
        iters.push_back({&Lf, combos[permF[m]][0], combos[permF[m]][1]});
    for (int m = 0; m < 4; ++m)
        iters.push_back({&Lr, combos[permR[m]][0], combos[permR[m]][1]});

    auto signed_name = [](int s, const std::string& ax) {
        return (s > 0 ? "+" : "-") + ax;
    };

    PulseSequence seq;
    seq.name = "SEQC_DROID_C3PO";
    seq.dim = 3;
    const Mat Sz = spin_operators(3).Sz;
    Mat U = Mat::Identity(3, 3);
    // angle_scale 1: plain pi/2 hop to `target`. angle_scale 2: pi pulse whose
    // quarter-rotation frame is `target` (the geodesic continues to the
    // negated start frame).
    auto hop = [&](const std::string& target, double angle_scale) {
        Pulse p = synthesize_balanced_hop(U, frame_by_name(target),
                                          {PI / 2, -PI / 2}, tp);
        p.rotation_angle *= angle_scale;
        p.duration *= angle_scale;
        seq.segments.push_back(Segment::of(p));
        U = p.unitary(3) * U;
    };
    for (size_t it = 0; it < iters.size(); ++it) {
        const auto& L = *iters[it].order;
        for (int i = 0; i < 6; ++i) {
            const int a = (i % 2 == 0) ? iters[it].p : iters[it].q;
            const int b = (i % 2 == 0) ? iters[it].q : iters[it].p;
            if (!frames_equal(U.adjoint() * Sz * U,
                              frame_by_name(signed_name(a, L[i])), 1e-8))
                throw std::logic_error("seqc: off frame in iteration " +
                                       std::to_string(it));
            seq.segments.push_back(Segment::dwell(tau));
            hop(signed_name(b, L[(i + 1) % 6]), 2.0); // echo pi pulse
            seq.segments.push_back(Segment::dwell(tau));
            if (i < 5)
                // parity alternation: the next dwell sign equals this echo's
                // intermediate sign
                hop(signed_name(b, L[i + 1]), 1.0);
            else
                hop(signed_name(iters[(it + 1) % iters.size()].p,
                                (*iters[(it + 1) % iters.size()].order)[0]), 1.0);
        }
    }
    seq.finalize();
    if (!seq.cyclic)
        throw std::logic_error("seqc: net rotation is not diagonal");
    return seq;
}

Pulse lab_pi_pulse(int transition, double phase, double tp) {
    Pulse p;
    p.kind = Pulse::Kind::single_transition;
    p.transition = transition;
    p.phase1 = phase;
    p.rotation_angle = PI / 2; // population-inverting pi pulse on one transition
    p.duration = tp;
    return p;
}

// The two-iteration robust cyclic echo pulse pattern (transition, phase).
std::vector<std::pair<int, double>> echo_pattern() {
    return {{0, 0}, {1, 0}, {0, 0}, {1, 0}, {0, 0}, {1, 0},
            {0, PI}, {1, 0}, {0, 0}, {1, PI}, {0, PI}, {1, 0}};
}

PulseSequence make_seq1(double tau, double tp) {
    PulseSequence seq;
    seq.name = "SEQ1_CYCLIC_ECHO";
    seq.dim = 3;
    for (int k = 0; k < 3; ++k) {
        seq.segments.push_back(Segment::dwell(tau));
        seq.segments.push_back(Segment::of(lab_pi_pulse(0, 0, tp)));
        seq.segments.push_back(Segment::of(lab_pi_pulse(1, 0, tp)));
    }
    seq.finalize();
    return seq;
}

PulseSequence make_seqa(double tau, double tp) {
    PulseSequence seq;
    seq.name = "SEQA_ROBUST_CYCLIC_ECHO";
    seq.dim = 3;
    for (const auto& [tr, ph] : echo_pattern()) {
        seq.segments.push_back(Segment::dwell(tau));
        seq.segments.push_back(Segment::of(lab_pi_pulse(tr, ph, tp)));
    }
    seq.finalize();
    return seq;
}

PulseSequence make_wahuha(double tau, double tp) {
    PulseSequence seq;
    seq.name = "WAHUHA";
    seq.dim = 2;
    auto ops = spin_operators(2);
    const Mat Sz = ops.Sz;
    std::vector<Mat> cycle = {ops.Sz, ops.Sx, ops.Sy};
    Mat U = Mat::Identity(2, 2);
    for (int k = 0; k < 3; ++k) {
        seq.segments.push_back(Segment::dwell(tau));
        const Mat& target = cycle[(k + 1) % 3];
        Mat C = U * target * U.adjoint();
        // axis = (bloch(C) x z), generator = axis . S, quarter rotation
        Eigen::Vector3d c(2 * (C * ops.Sx).trace().real(),
                          2 * (C * ops.Sy).trace().real(),
                          2 * (C * ops.Sz).trace().real());
        Eigen::Vector3d a = c.cross(Eigen::Vector3d(0, 0, 1));
        if (a.norm() < 1e-12) throw std::logic_error("wahuha: degenerate hop");
        a.normalize();
        Mat G = a(0) * ops.Sx + a(1) * ops.Sy + a(2) * ops.Sz;
        Pulse p;
        p.explicit_generator = true;
        p.generator_matrix = G;
        p.rotation_angle = PI / 2;
        p.duration = tp;
        Mat P = p.unitary(2);
        if (!frames_equal(P.adjoint() * Sz * P, C, 1e-9)) {
            p.rotation_angle = -PI / 2;
            P = p.unitary(2);
            if (!frames_equal(P.adjoint() * Sz * P, C, 1e-9))
                throw std::logic_error("wahuha: hop synthesis failed");
        }
        seq.segments.push_back(Segment::of(p));
        U = P * U;
    }
    seq.finalize();
    return seq;
}

PulseSequence make_cyl6(const std::string& name, double tau, double tp) {
    // Frozen walk: Sz -> B1 -> B2 -> B3 -> X -> B4 -> Sz, six balanced pi/2
    // pulses; phases in units of pi and rotation signs found by graph search.
    struct Hop { double p1, p2, sign; };
    const Hop hops[6] = {{0.5, 0.0, -1}, {0.5, 1.0, +1}, {0.0, 1.5, -1},
                         {0.0, 0.5, -1}, {0.5, 1.0, -1}, {0.0, 1.5, +1}};
    const auto& fr = frames_cyl6();
    const std::vector<Mat> order = {fr.frames[0], fr.frames[1], fr.frames[2],
                                    fr.frames[3], fr.frames[4], fr.frames[5]};
    PulseSequence seq;
    seq.name = name;
    seq.dim = 3;
    const Mat Sz = spin_operators(3).Sz;
    Mat U = Mat::Identity(3, 3);
    for (int k = 0; k < 6; ++k) {
        if (!frames_equal(U.adjoint() * Sz * U, order[k], 1e-8))
            throw std::logic_error("cyl6: off frame at step " + std::to_string(k));
        seq.segments.push_back(Segment::dwell(tau));
        Pulse p;
        p.kind = Pulse::Kind::balanced_double;
        p.phase1 = hops[k].p1 * PI;
        p.phase2 = hops[k].p2 * PI;
        p.rotation_angle = hops[k].sign * PI / 2;
        p.duration = tp;
        seq.segments.push_back(Segment::of(p));
        U = p.unitary(3) * U;
    }
    if (!frames_equal(U.adjoint() * Sz * U, order[0], 1e-8))
        throw std::logic_error("cyl6: walk does not close");
    seq.finalize();
    return seq;
}

PulseSequence make_hord(double tau, double tp) {
    // Hops between the 8 frames are frozen 3-pulse balanced composites
    // (least-squares solutions; phases and angles in radians).
    static const double sched[8][9] = {
        {1.002280742005213, -1.9038878443235194, -2.9074373429471816,
         0.34853729137539424, 1.2256018237933743, -2.683801422079415,
         0.34353977697295646, -2.590293934336837, -0.23471692824860962},
        {-2.740668908076932, -0.7733481139423038, 2.229086707768368,
         -3.9284345031000925, 0.41070861709495565, 1.2557760237789284,
         -2.8186129793466743, -3.22462854129453, -1.0266619086339595},
        {-6.400931064499558, -4.70572850146059, 2.4233903240735946,
         -0.7324356459852372, -5.977251855593084, -3.710879965462316,
         -4.976596316998071, -1.1481919653945407, 2.4343818186875024},
        {1.6967523285775739, 1.3441892735383696, 7.207920054362652,
         -4.142352444500084, 0.03044214668221752, -4.838991940478649,
         0.12168283353740558, -0.31246746611494836, 1.2562568911046263},
        {2.4619369348944886, 2.4341604710963742, 0.3584002144235005,
         0.04603213315751228, -3.3075563291548553, -1.082489370399458,
         0.6821355697876633, -3.142286989137426, -2.330896013590228},
        {-3.0901935948904704, -1.5242884899886944, -0.7566273608140526,
         -2.1886441389163642, 1.733763556845385, 0.8980273737754126,
         2.0439132826042536, -3.409941429039544, 2.4295578779181},
        {4.130248607098758, 2.582539324585252, 1.6245901024925584,
         -0.5409341342693974, -3.0338329290661705, 5.205061128864952,
         -7.667690679283292, -0.3128811987169583, 2.074323670023705},
        {-2.9737139562711623, 4.28036576385148, -1.8381428327044782,
         2.633611251015785, 6.041329667212546, -3.979750822867932,
         0.6860921265667029, 0.0916362646313471, -4.527764288898754}};
    const auto& fr = frames_hord8();
    PulseSequence seq;
    seq.name = "HORD_QUTRIT_8";
    seq.dim = 3;
    const Mat Sz = spin_operators(3).Sz;
    Mat U = Mat::Identity(3, 3);
    for (int k = 0; k < 8; ++k) {
        if (!frames_equal(U.adjoint() * Sz * U, fr.frames[k], 1e-8))
            throw std::logic_error("hord: off frame at hop " + std::to_string(k));
        seq.segments.push_back(Segment::dwell(tau));
        for (int i = 0; i < 3; ++i) {
            Pulse p;
            p.kind = Pulse::Kind::balanced_double;
            p.phase1 = sched[k][3 * i];
            p.phase2 = sched[k][3 * i + 1];
            p.rotation_angle = sched[k][3 * i + 2];
            p.duration = tp * std::abs(p.rotation_angle) / (PI / 2);
            seq.segments.push_back(Segment::of(p));
            U = p.unitary(3) * U;
        }
    }
    if (!frames_equal(U.adjoint() * Sz * U, fr.frames[0], 1e-8))
        throw std::logic_error("hord: walk does not close");
    seq.finalize();
    return seq;
}

PulseSequence make_nongeodesic(double tau, double tp) {
    auto SL = nongeo_frame_list();
    auto S = [&](int k) { return SL[k - 1]; };
    // Outer dwell order: bracketed pass-through frames carry no echo block.
    struct Outer { Mat F; bool dwell; };
    std::vector<Outer> outer = {
        {S(5), true},  {S(2), true},  {S(9), true},   {S(3), true},
        {S(7), true},  {S(4), true},  {S(11), true},  {S(1), true},
        {S(6), true},  {Mat(-S(2)), false}, {S(10), true}, {S(3), false},
        {S(8), true},  {Mat(-S(4)), false}, {S(12), true}, {S(1), false},
        {S(5), false}};
    const Mat Sz = spin_operators(3).Sz;
    const std::vector<double> hop_angles = {PI / 4, PI / 2, -PI / 4, -PI / 2};

    PulseSequence seq;
    seq.name = "NONGEODESIC_SI";
    seq.dim = 3;
    Mat U = Mat::Identity(3, 3);
    auto move_to = [&](const Mat& target) {
        Pulse p = synthesize_balanced_hop(U, target, hop_angles, tp);
        seq.segments.push_back(Segment::of(p));
        U = p.unitary(3) * U;
    };
    move_to(outer[0].F); // entry Sz -> S5
    for (size_t idx = 0; idx < outer.size(); ++idx) {
        if (!frames_equal(U.adjoint() * Sz * U, outer[idx].F, 1e-8))
            throw std::logic_error("nongeodesic: off frame at outer step " +
                                   std::to_string(idx));
        if (outer[idx].dwell) {
            // one full robust cyclic echo block at this frame
            for (const auto& [tr, ph] : echo_pattern()) {
                seq.segments.push_back(Segment::dwell(tau));
                Pulse p = lab_pi_pulse(tr, ph, tp);
                seq.segments.push_back(Segment::of(p));
                U = p.unitary(3) * U;
            }
            if (!frames_equal(U.adjoint() * Sz * U, outer[idx].F, 1e-8))
                throw std::logic_error("nongeodesic: echo block not frame-transparent");
        }
        if (idx + 1 < outer.size()) move_to(outer[idx + 1].F);
    }
    move_to(Sz); // exit S5 -> Sz
    seq.finalize();
    return seq;
}

} // namespace

const ScarSequences& scar_sequences() {
    static const ScarSequences s = [] {
        const double tau = 20e-9, tp = 5e-9;
        const auto& base = base12_cycle();
        std::vector<std::string> walk1, walk2;
        for (int rep = 0; rep < 2; ++rep)
            walk1.insert(walk1.end(), base.begin(), base.end());
        walk2 = base;
        for (const auto& nm : base) {
            // second iteration on group 2: flip the z / xt / yt / zt families
            bool flip = nm.substr(1) != "x" && nm.substr(1) != "y";
            walk2.push_back(flip ? negate_name(nm) : nm);
        }
        ScarSequences out;
        out.group1 = assemble_frame_cycle("SCAR_XY", walk1, tau, tp);
        out.group2 = assemble_frame_cycle("SCAR_XY_GROUP2", walk2, tau, tp);
        return out;
    }();
    return s;
}

std::vector<std::string> library_names() {
    return {"WAHUHA",
            "CYL6",
            "HORD_QUTRIT_8",
            "SEQ1_CYCLIC_ECHO",
            "SEQ2_INTERACTION_DECOUPLING",
            "SEQA_ROBUST_CYCLIC_ECHO",
            "SEQB_NONROBUST",
            "SEQC_DROID_C3PO",
            "SCAR_XY",
            "NONGEODESIC_SI"};
}

LibraryName library_name_from_string(const std::string& name) {
    auto names = library_names();
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<LibraryName>(i);
    throw std::invalid_argument("unknown sequence name: " + name);
}

std::string to_string(LibraryName name) {
    return library_names()[static_cast<size_t>(name)];
}

const PulseSequence& library_sequence(LibraryName name) {
    static std::map<LibraryName, PulseSequence> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;

    const double tau = 25e-9, tp = 8e-9;
    PulseSequence seq;
    switch (name) {
        case LibraryName::WAHUHA:
            seq = make_wahuha(tau, tp);
            break;
        case LibraryName::CYL6:
            seq = make_cyl6("CYL6", tau, tp);
            break;
        case LibraryName::SEQ2_INTERACTION_DECOUPLING:
            seq = make_cyl6("SEQ2_INTERACTION_DECOUPLING", tau, tp);
            break;
        case LibraryName::HORD_QUTRIT_8:
            seq = make_hord(tau, tp);
            break;
        case LibraryName::SEQ1_CYCLIC_ECHO:
            seq = make_seq1(tau, tp);
            break;
        case LibraryName::SEQA_ROBUST_CYCLIC_ECHO:
            seq = make_seqa(tau, tp);
            break;
        case LibraryName::SEQB_NONROBUST:
            seq = assemble_frame_cycle("SEQB_NONROBUST", base12_cycle(), tau, tp);
            break;
        case LibraryName::SEQC_DROID_C3PO:
            seq = make_seqc(tau, tp);
            break;
        case LibraryName::SCAR_XY:
            seq = scar_sequences().group1;
            seq.name = "SCAR_XY";
            break;
        case LibraryName::NONGEODESIC_SI:
            seq = make_nongeodesic(tau, tp);
            break;
    }
    return cache.emplace(name, std::move(seq)).first->second;
}

const PulseSequence& library_sequence(const std::string& name) {
    return library_sequence(library_name_from_string(name));
}

} // namespace qseq
