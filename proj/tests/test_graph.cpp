#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qseq/graph.hpp"
#include "qseq/library.hpp"

using namespace qseq;

TEST_CASE("qubit pulse set generates the octahedron of axis frames") {
    auto ops = spin_operators(2);
    FrameGraph g = build_graph(ops.Sz, default_qubit_pulses(), 3);
    CHECK(g.vertices.size() == 6); // +-x, +-y, +-z
    // every vertex has the spectrum of Sz and a consistent realizing unitary
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        CHECK(is_frame(g.vertices[v], 2));
        CHECK(frames_equal(g.realizing[v].adjoint() * ops.Sz * g.realizing[v],
                           g.vertices[v]));
    }
    // +-Sz, +-Sx, +-Sy are all present
    for (const Mat& f : {ops.Sz, ops.Sx, ops.Sy}) {
        CHECK(g.find_vertex(f).has_value());
        CHECK(g.find_vertex(Mat(-f)).has_value());
    }
    // octahedron adjacency: each vertex has 4 distinct neighbors (not itself,
    // not its antipode)
    for (int v = 0; v < 6; ++v) {
        auto nb = g.neighbors(v);
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        CHECK(nb.size() == 4);
        auto anti = g.find_vertex(Mat(-g.vertices[v]));
        REQUIRE(anti.has_value());
        for (int w : nb) {
            CHECK(w != v);
            CHECK(w != *anti);
        }
    }
}

TEST_CASE("edges are consistent with pulse conjugation") {
    auto ops = spin_operators(3);
    FrameGraph g = build_graph(ops.Sz, default_qutrit_pulses(), 1);
    REQUIRE(!g.edges.empty());
    for (const auto& e : g.edges) {
        const auto& p = g.pulses.generators[e.pulse];
        Mat U = exp_i_herm(p.generator, -e.sign * p.rotation_angle);
        Mat to = conjugate_frame(g.vertices[e.from], U);
        CHECK(frames_equal(to, g.vertices[e.to], 1e-8));
    }
}

TEST_CASE("depth-1 qutrit graph contains the full 12-frame set") {
    auto ops = spin_operators(3);
    FrameGraph g = build_graph(ops.Sz, default_qutrit_pulses(), 1);
    const auto& fs = frames12();
    int found = 0;
    for (const auto& f : fs.frames)
        if (g.find_vertex(f).has_value()) ++found;
    // +-z and the 8 frames adjacent to +z are reachable in one pulse; the
    // remaining members of the 12-frame family appear at depth 2
    CHECK(found >= 10);
    FrameGraph g2 = build_graph(ops.Sz, default_qutrit_pulses(), 2);
    found = 0;
    for (const auto& f : fs.frames)
        if (g2.find_vertex(f).has_value()) ++found;
    CHECK(found == 12);
}

TEST_CASE("graph construction is deterministic") {
    auto ops = spin_operators(3);
    FrameGraph a = build_graph(ops.Sz, default_qutrit_pulses(), 2);
    FrameGraph b = build_graph(ops.Sz, default_qutrit_pulses(), 2);
    REQUIRE(a.vertices.size() == b.vertices.size());
    REQUIRE(a.edges.size() == b.edges.size());
    for (size_t v = 0; v < a.vertices.size(); ++v)
        CHECK(frame_key(a.vertices[v]) == frame_key(b.vertices[v]));
    for (size_t e = 0; e < a.edges.size(); ++e) {
        CHECK(a.edges[e].from == b.edges[e].from);
        CHECK(a.edges[e].to == b.edges[e].to);
        CHECK(a.edges[e].pulse == b.edges[e].pulse);
        CHECK(a.edges[e].sign == b.edges[e].sign);
    }
    CHECK(graph_to_json(a) == graph_to_json(b));
}

TEST_CASE("vertex cap overflow throws") {
    auto ops = spin_operators(3);
    CHECK_THROWS(build_graph(ops.Sz, default_qutrit_pulses(), 2, 10));
}

TEST_CASE("find_walk visits the required frames with prescribed dwell") {
    auto ops = spin_operators(3);
    FrameGraph g = build_graph(ops.Sz, default_qutrit_pulses(), 3);
    const auto& fs = frames12();
    WeightedFrameRequirement req{fs.frames, fs.weights};
    FrameWalk walk = find_walk(g, req);
    CHECK(walk.closed);
    REQUIRE(walk.vertices.size() == walk.dwell.size());
    REQUIRE(walk.edge_ids.size() + 1 == walk.vertices.size());
    // total dwell on each required frame equals its weight
    for (size_t i = 0; i < fs.frames.size(); ++i) {
        auto v = g.find_vertex(fs.frames[i]);
        REQUIRE(v.has_value());
        double total = 0;
        for (size_t k = 0; k < walk.vertices.size(); ++k)
            if (walk.vertices[k] == *v) total += walk.dwell[k];
        CHECK(total == doctest::Approx(fs.weights[i]).epsilon(1e-12));
    }
    // consecutive vertices joined by the recorded edges
    for (size_t k = 0; k < walk.edge_ids.size(); ++k) {
        const auto& e = g.edges[walk.edge_ids[k]];
        bool forward = e.from == walk.vertices[k] && e.to == walk.vertices[k + 1];
        CHECK(forward);
    }
}

TEST_CASE("graph exports mention every vertex") {
    auto ops = spin_operators(2);
    FrameGraph g = build_graph(ops.Sz, default_qubit_pulses(), 3);
    std::string js = graph_to_json(g);
    std::string dot = graph_to_dot(g);
    CHECK(js.find("\"vertices\"") != std::string::npos);
    CHECK(dot.find("digraph") != std::string::npos);
    for (size_t v = 0; v < g.vertices.size(); ++v)
        CHECK(dot.find("v" + std::to_string(v)) != std::string::npos);
}
