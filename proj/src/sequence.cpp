#include "qseq/sequence.hpp"

#include <json.hpp>

#include <cmath>

namespace qseq {

Mat Pulse::generator(int dim) const {
    if (explicit_generator) return generator_matrix;
    if (dim != 3) throw std::invalid_argument("pulse: parameterized pulses are dim 3");
    if (kind == Kind::balanced_double) return balanced_double_drive(phase1, phase2);
    return single_transition_drive(transition, phase1);
}

Mat Pulse::generator_with_error(int dim, double eps1, double eps2) const {
    if (explicit_generator) return (1.0 + eps1) * generator_matrix;
    Mat G = Mat::Zero(3, 3);
    const double s = 1.0 / std::sqrt(2.0);
    if (kind == Kind::balanced_double) {
        G(0, 1) = (1.0 + eps1) * s * std::exp(cd(0, -phase1));
        G(1, 2) = (1.0 + eps2) * s * std::exp(cd(0, -phase2));
    } else if (transition == 0) {
        G(0, 1) = (1.0 + eps1) * std::exp(cd(0, -phase1));
    } else {
        G(1, 2) = (1.0 + eps2) * std::exp(cd(0, -phase1));
    }
    G(1, 0) = std::conj(G(0, 1));
    G(2, 1) = std::conj(G(1, 2));
    (void)dim;
    return G;
}

Mat Pulse::unitary(int dim) const { return exp_i_herm(generator(dim), -rotation_angle); }

double PulseSequence::cycle_time() const {
    double t = 0;
    for (const auto& s : segments)
        t += s.kind == Segment::Kind::free_evolution ? s.duration : s.pulse.duration;
    return t;
}

int PulseSequence::pulse_count() const {
    int n = 0;
    for (const auto& s : segments)
        if (s.kind == Segment::Kind::pulse) ++n;
    return n;
}

PulseSequence::FrameTrace PulseSequence::frame_trace() const {
    FrameTrace tr;
    const Mat Sz = spin_operators(dim).Sz;
    Mat U = Mat::Identity(dim, dim);
    for (const auto& s : segments) {
        if (s.kind == Segment::Kind::free_evolution) {
            tr.frames.push_back(U.adjoint() * Sz * U);
            tr.unitaries.push_back(U);
            tr.durations.push_back(s.duration);
        } else {
            U = s.pulse.unitary(dim) * U;
        }
    }
    return tr;
}

void PulseSequence::finalize() {
    Mat U = Mat::Identity(dim, dim);
    for (const auto& s : segments)
        if (s.kind == Segment::Kind::pulse) U = s.pulse.unitary(dim) * U;
    net_rotation = U;
    double offdiag = 0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            if (r != c) offdiag = std::max(offdiag, std::abs(U(r, c)));
    cyclic = offdiag <= 1e-9;
}

Pulse synthesize_balanced_hop(const Mat& U, const Mat& target_frame,
                              const std::vector<double>& angles,
                              double tp_per_quarter) {
    const Mat Sz = spin_operators(3).Sz;
    const Mat C = U * target_frame * U.adjoint();
    const double s = 1.0 / std::sqrt(2.0);
    for (double base : angles) {
        for (double th : {base, -base}) {
            // C must equal cos(th) Sz + sin(th) B' with B' = V^dag Sy V.
            Mat R = (C - std::cos(th) * Sz) / std::sin(th);
            if (std::max({std::abs(R(0, 0)), std::abs(R(1, 1)), std::abs(R(2, 2)),
                          std::abs(R(0, 2))}) > 1e-9)
                continue;
            cd c1 = R(0, 1), c2 = R(1, 2);
            if (std::abs(std::abs(c1) - s) > 1e-9 || std::abs(std::abs(c2) - s) > 1e-9)
                continue;
            double p1 = -std::arg(cd(0, 1) * c1 * std::sqrt(2.0));
            double p2 = -std::arg(cd(0, 1) * c2 * std::sqrt(2.0));
            Pulse p;
            p.kind = Pulse::Kind::balanced_double;
            p.phase1 = p1;
            p.phase2 = p2;
            p.rotation_angle = th;
            p.duration = tp_per_quarter * std::abs(th) / (PI / 2);
            Mat P = p.unitary(3);
            if ((P.adjoint() * Sz * P - C).norm() < 1e-8) return p;
        }
    }
    throw std::runtime_error("synthesize_balanced_hop: target not reachable by one balanced pulse");
}

PulseSequence compile_walk(const FrameWalk& walk, const FrameGraph& graph,
                           const Timing& timing) {
    if (!(timing.tau > 0) || !(timing.t_pi2 > 0))
        throw std::invalid_argument("compile_walk: nonpositive timing");
    if (walk.vertices.empty() ||
        walk.edge_ids.size() + 1 != walk.vertices.size())
        throw std::invalid_argument("compile_walk: malformed walk");

    PulseSequence seq;
    seq.dim = graph.dim;
    seq.name = "compiled";
    int n_dwell = 0;
    for (double w : walk.dwell)
        if (w > 0) ++n_dwell;
    if (n_dwell == 0) n_dwell = 1;

    Mat U = graph.realizing[walk.vertices.front()];
    const Mat Szd = spin_operators(graph.dim).Sz;
    for (size_t i = 0; i < walk.vertices.size(); ++i) {
        if (walk.dwell[i] > 0)
            seq.segments.push_back(Segment::dwell(walk.dwell[i] * n_dwell * timing.tau));
        if (i == walk.edge_ids.size()) break;
        const GraphEdge& e = graph.edges[walk.edge_ids[i]];
        if (e.from != walk.vertices[i] || e.to != walk.vertices[i + 1])
            throw std::invalid_argument("compile_walk: edge/vertex mismatch");
        const auto& pp = graph.pulses.generators[e.pulse];
        // Phase-history correction: conjugate the edge generator by the
        // diagonal mismatch between the accumulated unitary and the graph's
        // realizing unitary of the source vertex.
        Mat D = U * graph.realizing[e.from].adjoint();
        for (int r = 0; r < graph.dim; ++r)
            for (int c = 0; c < graph.dim; ++c)
                if (r != c && std::abs(D(r, c)) > 1e-8)
                    throw std::runtime_error("compile_walk: phase history not diagonal");
        Mat Gp = D * pp.generator * D.adjoint();
        // Structural check: re-phasing must preserve amplitude pattern.
        for (int r = 0; r < graph.dim; ++r)
            for (int c = 0; c < graph.dim; ++c)
                if (std::abs(std::abs(Gp(r, c)) - std::abs(pp.generator(r, c))) > 1e-9)
                    throw std::runtime_error("compile_walk: correction changed amplitudes");

        Pulse p;
        double theta = e.sign * pp.rotation_angle;
        if (graph.dim == 3 && std::abs(std::abs(Gp(0, 1)) - 1 / std::sqrt(2.0)) < 1e-9 &&
            std::abs(std::abs(Gp(1, 2)) - 1 / std::sqrt(2.0)) < 1e-9 &&
            std::abs(Gp(0, 2)) < 1e-12) {
            p.kind = Pulse::Kind::balanced_double;
            p.phase1 = -std::arg(std::sqrt(2.0) * Gp(0, 1));
            p.phase2 = -std::arg(std::sqrt(2.0) * Gp(1, 2));
        } else {
            p.explicit_generator = true;
            p.generator_matrix = Gp;
        }
        p.rotation_angle = theta;
        p.duration = timing.t_pi2 * std::abs(theta) / (PI / 2);
        seq.segments.push_back(Segment::of(p));
        U = p.unitary(graph.dim) * U;
        // round-trip invariant: simulated frame matches the walk's next vertex
        if (!frames_equal(U.adjoint() * Szd * U, graph.vertices[e.to], 1e-8))
            throw std::runtime_error("compile_walk: compiled pulse misses target frame");
    }
    seq.finalize();
    return seq;
}

static RVec frame_coeffs(const Mat& F, int dim) {
    if (dim == 3) {
        RVec c = gell_mann_decompose(F);
        return c.segment(1, 8);
    }
    auto ops = spin_operators(2);
    RVec c(3);
    c(0) = (F * ops.Sx).trace().real() * 2.0;
    c(1) = (F * ops.Sy).trace().real() * 2.0;
    c(2) = (F * ops.Sz).trace().real() * 2.0;
    return c;
}

FrameMatrix frame_matrix(const PulseSequence& seq) {
    FrameMatrix fm;
    const Mat Sz = spin_operators(seq.dim).Sz;
    Mat U = Mat::Identity(seq.dim, seq.dim);
    std::vector<RVec> cols;
    int pulse_idx = 0;
    for (const auto& s : seq.segments) {
        if (s.kind == Segment::Kind::free_evolution) {
            cols.push_back(frame_coeffs(U.adjoint() * Sz * U, seq.dim));
            fm.column_kind.push_back("free");
        } else {
            Mat G = s.pulse.generator(seq.dim);
            if (seq.dim == 3 && geodesic_deviation(G) > 1e-9)
                throw std::runtime_error("frame_matrix: non-geodesic pulse #" +
                                         std::to_string(pulse_idx));
            double th = s.pulse.rotation_angle;
            Mat inpulse;
            if (std::abs(std::abs(th) - PI) < 1e-12) {
                // pi pulse: record the mid-rotation frame
                Mat Pm = exp_i_herm(G, -th / 2);
                inpulse = Pm.adjoint() * Sz * Pm;
            } else {
                inpulse = pulse_average_operator(G, Sz, th);
            }
            cols.push_back(frame_coeffs(U.adjoint() * inpulse * U, seq.dim));
            fm.column_kind.push_back("pulse");
            U = s.pulse.unitary(seq.dim) * U;
            ++pulse_idx;
        }
    }
    const int rows = seq.dim == 3 ? 8 : 3;
    fm.entries.resize(rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) fm.entries.col(j) = cols[j];
    return fm;
}

static nlohmann::ordered_json mat_to_json(const Mat& M) {
    nlohmann::ordered_json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int r = 0; r < M.rows(); ++r) {
        nlohmann::ordered_json rr = nlohmann::json::array(), ri = nlohmann::json::array();
        for (int c = 0; c < M.cols(); ++c) {
            rr.push_back(M(r, c).real());
            ri.push_back(M(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return {{"re", re}, {"im", im}};
}

static Mat mat_from_json(const nlohmann::json& j) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    int n = static_cast<int>(re.size());
    Mat M(n, static_cast<int>(re[0].size()));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < M.cols(); ++c)
            M(r, c) = cd(re[r][c].get<double>(), im[r][c].get<double>());
    return M;
}

std::string sequence_to_json(const PulseSequence& seq) {
    nlohmann::ordered_json j;
    j["name"] = seq.name;
    j["dim"] = seq.dim;
    j["segments"] = nlohmann::json::array();
    const double deg = 180.0 / PI;
    for (const auto& s : seq.segments) {
        nlohmann::ordered_json r;
        if (s.kind == Segment::Kind::free_evolution) {
            r["type"] = "free";
            r["duration_ns"] = s.duration * 1e9;
        } else {
            r["type"] = "pulse";
            r["duration_ns"] = s.pulse.duration * 1e9;
            r["angle_deg"] = s.pulse.rotation_angle * deg;
            if (s.pulse.explicit_generator) {
                r["kind"] = "explicit";
                r["generator"] = mat_to_json(s.pulse.generator_matrix);
            } else if (s.pulse.kind == Pulse::Kind::balanced_double) {
                r["kind"] = "balanced_double";
                r["phase1_deg"] = s.pulse.phase1 * deg;
                r["phase2_deg"] = s.pulse.phase2 * deg;
            } else {
                r["kind"] = "single_transition";
                r["transition"] = s.pulse.transition;
                r["phase1_deg"] = s.pulse.phase1 * deg;
            }
        }
        j["segments"].push_back(r);
    }
    return j.dump(2);
}

PulseSequence sequence_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    PulseSequence seq;
    seq.name = j.at("name").get<std::string>();
    seq.dim = j.at("dim").get<int>();
    const double rad = PI / 180.0;
    for (const auto& r : j.at("segments")) {
        Segment s;
        if (r.at("type") == "free") {
            s.kind = Segment::Kind::free_evolution;
            s.duration = r.at("duration_ns").get<double>() * 1e-9;
        } else {
            s.kind = Segment::Kind::pulse;
            s.pulse.duration = r.at("duration_ns").get<double>() * 1e-9;
            s.pulse.rotation_angle = r.at("angle_deg").get<double>() * rad;
            std::string kind = r.at("kind").get<std::string>();
            if (kind == "explicit") {
                s.pulse.explicit_generator = true;
                s.pulse.generator_matrix = mat_from_json(r.at("generator"));
            } else if (kind == "balanced_double") {
                s.pulse.kind = Pulse::Kind::balanced_double;
                s.pulse.phase1 = r.at("phase1_deg").get<double>() * rad;
                s.pulse.phase2 = r.at("phase2_deg").get<double>() * rad;
            } else {
                s.pulse.kind = Pulse::Kind::single_transition;
                s.pulse.transition = r.at("transition").get<int>();
                s.pulse.phase1 = r.at("phase1_deg").get<double>() * rad;
            }
        }
        seq.segments.push_back(std::move(s));
    }
    seq.finalize();
    return seq;
}

} // namespace qseq
