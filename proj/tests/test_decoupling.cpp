#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qseq/decoupling.hpp"
#include "qseq/library.hpp"

using namespace qseq;

namespace {

HamiltonianSpec qutrit_spec() {
    HamiltonianSpec spec;
    spec.model = ModelKind::spin1_dipolar;
    spec.coupling_scale = 1.0;
    return spec;
}

// Independent dense residual: coefficient norms of the weighted sums,
// computed directly from the transformed terms (no LP machinery).
double direct_residual(const WeightedFrames& fs, const DecouplingTarget& t) {
    HamiltonianSpec spec = qutrit_spec();
    if (fs.frames[0].rows() == 2) spec.model = ModelKind::spin_half_dipolar;
    Mat dz = Mat::Zero(fs.frames[0].rows(), fs.frames[0].cols());
    Mat dz2 = dz;
    const int d2 = static_cast<int>(fs.frames[0].rows() * fs.frames[0].rows());
    Mat int2 = Mat::Zero(d2, d2);
    for (size_t i = 0; i < fs.frames.size(); ++i) {
        auto terms = transformed_terms(fs.frames[i], fs.unitaries[i], spec);
        dz += fs.weights[i] * terms.dz;
        dz2 += fs.weights[i] * terms.dz2;
        int2 += fs.weights[i] * terms.int2;
    }
    double r = 0;
    if (t.kill_disorder_z) r = std::max(r, dz.norm());
    if (t.kill_disorder_z2) r = std::max(r, dz2.norm());
    if (t.kill_interaction) r = std::max(r, int2.norm());
    return r;
}

} // namespace

TEST_CASE("transformed terms match their definitions") {
    auto ops = spin_operators(3);
    const auto& fs = frames12();
    HamiltonianSpec spec = qutrit_spec();
    for (size_t i = 0; i < fs.frames.size(); ++i) {
        auto t = transformed_terms(fs.frames[i], fs.unitaries[i], spec);
        const Mat& U = fs.unitaries[i];
        CHECK((t.dz - U.adjoint() * ops.Sz * U).norm() < 1e-12);
        CHECK((t.dz2 - traceless(U.adjoint() * ops.Sz2 * U)).norm() < 1e-12);
        Mat UU = kron(U, U);
        Mat ref = traceless(UU.adjoint() * two_body_interaction(spec) * UU);
        CHECK((t.int2 - ref).norm() < 1e-12);
        // the dz term is just the frame itself
        CHECK((t.dz - fs.frames[i]).norm() < 1e-9);
    }
}

TEST_CASE("the 12-frame set decouples everything with uniform weights") {
    const auto& fs = frames12();
    DecouplingTarget target; // full
    CHECK(direct_residual(fs, target) < 1e-9);
    CHECK(verify_weights(fs.frames, fs.unitaries, fs.weights, qutrit_spec(), target) <
          1e-9);
    auto r = solve_weights(fs.frames, fs.unitaries, qutrit_spec(), target);
    REQUIRE(r.feasible);
    for (double w : r.set.weights) CHECK(w == doctest::Approx(1.0 / 12).epsilon(1e-9));
    CHECK(r.set.uniform);
    CHECK(r.set.residual < 1e-9);
}

TEST_CASE("the alternate 12-frame set also decouples everything") {
    const auto& fs = frames12_alternate();
    DecouplingTarget target;
    auto r = solve_weights(fs.frames, fs.unitaries, qutrit_spec(), target);
    REQUIRE(r.feasible);
    CHECK(verify_weights(fs.frames, fs.unitaries, r.set.weights, qutrit_spec(),
                         target) < 1e-9);
}

TEST_CASE("CYL-6 set: interaction-only target feasible, full target infeasible") {
    const auto& fs = frames_cyl6();
    DecouplingTarget inter;
    inter.kill_disorder_z = inter.kill_disorder_z2 = false;
    auto r1 = solve_weights(fs.frames, fs.unitaries, qutrit_spec(), inter);
    REQUIRE(r1.feasible);
    CHECK(verify_weights(fs.frames, fs.unitaries, r1.set.weights, qutrit_spec(),
                         inter) < 1e-9);
    DecouplingTarget full;
    auto r2 = solve_weights(fs.frames, fs.unitaries, qutrit_spec(), full);
    CHECK(!r2.feasible);
    CHECK(r2.infeasibility_certificate > 1e-6);
}

TEST_CASE("proportional interaction target accepts the XY pattern frames") {
    // The scar schedule's dwell frames time-average the Sz Sz coupling into a
    // multiple of SxSx + SySy; the proportional target must accept exactly
    // that weighted set.
    auto ops = spin_operators(3);
    const auto& fs = frames12();
    DecouplingTarget t;
    t.kill_interaction = false;
    t.interaction_proportional = true;
    t.interaction_pattern = traceless(kron(ops.Sx, ops.Sx) + kron(ops.Sy, ops.Sy));
    auto r = solve_weights(fs.frames, fs.unitaries, qutrit_spec(), t);
    // uniform weights kill the interaction entirely, and zero is a valid
    // multiple of the pattern, so this must be feasible
    REQUIRE(r.feasible);
    CHECK(verify_weights(fs.frames, fs.unitaries, r.set.weights, qutrit_spec(), t) <
          1e-9);
}

TEST_CASE("pseudo-Bloch triples and the four partitions") {
    Mat Sx = frame_by_name("+x"), Sy = frame_by_name("+y"), Sz = frame_by_name("+z");
    Mat Sxt = frame_by_name("+xt"), Syt = frame_by_name("+yt"),
        Szt = frame_by_name("+zt");
    CHECK(bloch_triple_ok(Sz, Sx, Sy));
    CHECK(bloch_triple_ok(Sz, Sx, Sxt));
    CHECK(bloch_triple_ok(Sxt, Syt, Szt));
    CHECK(!bloch_triple_ok(Sz, Sx, Szt));
    CHECK(!bloch_triple_ok(Sz, Sy, Sxt));

    std::vector<Mat> axes = {Sz, Sx, Sy, Szt, Sxt, Syt};
    auto parts = bloch_sphere_partitions(axes);
    CHECK(parts.size() == 4);
    // each partition's complement must also satisfy the condition
    for (const auto& p : parts) {
        std::vector<int> rest;
        for (int i = 0; i < 6; ++i)
            if (i != p[0] && i != p[1] && i != p[2]) rest.push_back(i);
        CHECK(bloch_triple_ok(axes[p[0]], axes[p[1]], axes[p[2]]));
        CHECK(bloch_triple_ok(axes[rest[0]], axes[rest[1]], axes[rest[2]]));
    }
}
