#include "qseq/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace qseq {

void PulseSet::validate() const {
    std::set<std::string> labels;
    for (const auto& p : generators) {
        if (!is_hermitian(p.generator, 1e-10))
            throw std::invalid_argument("pulse set: non-Hermitian generator " + p.label);
        if (!(p.rotation_angle > 0))
            throw std::invalid_argument("pulse set: nonpositive angle " + p.label);
        if (!labels.insert(p.label).second)
            throw std::invalid_argument("pulse set: duplicate label " + p.label);
    }
}

PulseSet default_qutrit_pulses() {
    PulseSet ps;
    const double grid[4] = {0.0, PI / 2, PI, 3 * PI / 2};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int a = 0; a < 2; ++a) {
                PulseSpecEntry e;
                e.label = "bd" + std::to_string(i) + std::to_string(j) +
                          (a == 0 ? "h" : "f");
                e.generator = balanced_double_drive(grid[i], grid[j]);
                e.rotation_angle = a == 0 ? PI / 2 : PI;
                ps.generators.push_back(std::move(e));
            }
    return ps;
}

PulseSet default_qubit_pulses() {
    PulseSet ps;
    auto ops = spin_operators(2);
    ps.generators.push_back({"x", ops.Sx, PI / 2});
    ps.generators.push_back({"y", ops.Sy, PI / 2});
    return ps;
}

std::optional<int> FrameGraph::find_vertex(const Mat& frame, double tol) const {
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        if (frames_equal(vertices[i], frame, tol)) return i;
    return std::nullopt;
}

std::vector<int> FrameGraph::neighbors(int v) const {
    std::set<int> out;
    for (const auto& e : edges)
        if (e.from == v) out.insert(e.to);
    return {out.begin(), out.end()};
}

FrameGraph build_graph(const Mat& start, const PulseSet& pulses_in, int depth,
                       int vertex_cap) {
    if (depth < 1) throw std::invalid_argument("build_graph: depth must be >= 1");
    PulseSet pulses = pulses_in;
    pulses.validate();
    std::sort(pulses.generators.begin(), pulses.generators.end(),
              [](const auto& a, const auto& b) { return a.label < b.label; });

    FrameGraph g;
    g.dim = static_cast<int>(start.rows());
    if (!is_frame(start, g.dim))
        throw std::invalid_argument("build_graph: start is not a frame");
    g.pulses = pulses;
    g.vertices.push_back(start);
    g.realizing.push_back(realizing_unitary(start));

    std::unordered_map<std::string, int> seen;
    seen[frame_key(start)] = 0;
    std::vector<int> frontier = {0};
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<int> next;
        for (int vi : frontier) {
            for (int pi = 0; pi < static_cast<int>(pulses.generators.size()); ++pi) {
                const auto& p = pulses.generators[pi];
                for (int sign : {+1, -1}) {
                    Mat P = exp_i_herm(p.generator, -sign * p.rotation_angle);
                    Mat Unew = P * g.realizing[vi];
                    Mat Fn = Unew.adjoint() * spin_operators(g.dim).Sz * Unew;
                    auto key = frame_key(Fn);
                    auto it = seen.find(key);
                    int to;
                    if (it == seen.end()) {
                        to = static_cast<int>(g.vertices.size());
                        if (to >= vertex_cap)
                            throw std::runtime_error("build_graph: vertex cap exceeded");
                        seen.emplace(key, to);
                        g.vertices.push_back(Fn);
                        g.realizing.push_back(Unew);
                        next.push_back(to);
                    } else {
                        to = it->second;
                    }
                    g.edges.push_back({vi, to, pi, sign});
                }
            }
        }
        frontier = std::move(next);
    }
    return g;
}

FrameWalk find_walk(const FrameGraph& graph, const WeightedFrameRequirement& required,
                    WalkPolicy policy) {
    const int nreq = static_cast<int>(required.frames.size());
    if (nreq == 0) throw std::invalid_argument("find_walk: empty requirement");
    if (nreq != static_cast<int>(required.weights.size()))
        throw std::invalid_argument("find_walk: weight/frame count mismatch");
    if (nreq > 20) throw std::invalid_argument("find_walk: too many required frames");

    std::vector<int> req_vertex(nreq);
    std::map<int, int> vertex_req; // graph vertex -> requirement index
    for (int i = 0; i < nreq; ++i) {
        auto v = graph.find_vertex(required.frames[i]);
        if (!v) throw std::runtime_error("find_walk: required frame not in graph");
        req_vertex[i] = *v;
        vertex_req[*v] = i;
    }

    // adjacency: first edge id per (from -> to), edges in insertion order.
    std::map<int, std::vector<std::pair<int, int>>> adj; // from -> [(to, edge id)]
    for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e) {
        adj[graph.edges[e].from].push_back({graph.edges[e].to, e});
    }

    const int start = 0;
    unsigned start_mask = 0;
    if (auto it = vertex_req.find(start); it != vertex_req.end())
        start_mask = 1u << it->second;
    const unsigned full = (1u << nreq) - 1;

    std::vector<int> verts;
    std::vector<int> eids;
    if (start_mask == full) {
        // Zero-edge walk: the start frame alone satisfies the requirement.
        verts = {start};
    } else {
        // Search over states (vertex, visited-requirement mask); memoization on
        // states makes both policies terminate. A deque used FIFO gives a BFS
        // (fewest pulses); used LIFO it gives a deterministic DFS (first found).
        // The goal is a transition INTO the start vertex with a full mask, so
        // the walk is closed in frame space.
        using Key = std::pair<int, unsigned>;
        std::map<Key, std::pair<Key, int>> parent; // state -> (previous state, edge)
        std::set<Key> visited;
        std::deque<Key> q;
        Key s0{start, start_mask};
        visited.insert(s0);
        q.push_back(s0);
        std::optional<Key> goal;
        size_t expansions = 0;
        while (!q.empty() && !goal) {
            Key cur;
            if (policy == WalkPolicy::minimize_pulses) {
                cur = q.front(); q.pop_front();
            } else {
                cur = q.back(); q.pop_back();
            }
            if (++expansions > 1000000)
                throw std::runtime_error("find_walk: state cap exceeded");
            auto it = adj.find(cur.first);
            if (it == adj.end()) continue;
            for (const auto& [to, eid] : it->second) {
                unsigned m = cur.second;
                if (auto rit = vertex_req.find(to); rit != vertex_req.end())
                    m |= 1u << rit->second;
                Key key{to, m};
                if (to == start && m == full) {
                    // Closed: record synthetic goal state distinct from s0.
                    parent[{-1, full}] = {cur, eid};
                    goal = Key{-1, full};
                    break;
                }
                if (visited.count(key)) continue;
                visited.insert(key);
                parent[key] = {cur, eid};
                q.push_back(key);
            }
        }
        if (!goal) throw std::runtime_error("find_walk: no closed walk found");

        Key key = *goal;
        verts.push_back(start); // final vertex of the closed walk
        while (true) {
            auto pit = parent.find(key);
            if (pit == parent.end()) break;
            eids.push_back(pit->second.second);
            key = pit->second.first;
            verts.push_back(key.first);
        }
        std::reverse(verts.begin(), verts.end());
        std::reverse(eids.begin(), eids.end());
    }

    FrameWalk walk;
    walk.vertices = verts;
    walk.edge_ids = eids;
    walk.closed = verts.front() == verts.back();
    walk.dwell.assign(verts.size(), 0.0);
    std::vector<bool> placed(nreq, false);
    for (size_t i = 0; i < verts.size(); ++i) {
        auto rit = vertex_req.find(verts[i]);
        if (rit != vertex_req.end() && !placed[rit->second]) {
            walk.dwell[i] = required.weights[rit->second];
            placed[rit->second] = true;
        }
    }
    return walk;
}

std::string graph_to_json(const FrameGraph& g) {
    nlohmann::ordered_json j;
    j["dim"] = g.dim;
    j["vertices"] = nlohmann::json::array();
    for (const auto& F : g.vertices) {
        if (g.dim == 3) {
            RVec c = gell_mann_decompose(F);
            std::vector<double> v(c.data(), c.data() + c.size());
            j["vertices"].push_back({{"gell_mann", v}});
        } else {
            std::vector<std::vector<double>> re, im;
            for (int r = 0; r < g.dim; ++r) {
                std::vector<double> rr, ri;
                for (int cc = 0; cc < g.dim; ++cc) {
                    rr.push_back(F(r, cc).real());
                    ri.push_back(F(r, cc).imag());
                }
                re.push_back(rr);
                im.push_back(ri);
            }
            j["vertices"].push_back({{"re", re}, {"im", im}});
        }
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back({{"from", e.from},
                              {"to", e.to},
                              {"pulse", g.pulses.generators[e.pulse].label},
                              {"sign", e.sign}});
    return j.dump(2);
}

std::string graph_to_dot(const FrameGraph& g) {
    std::ostringstream os;
    os << "digraph frames {\n";
    for (size_t i = 0; i < g.vertices.size(); ++i)
        os << "  v" << i << " [label=\"" << i << "\"];\n";
    for (const auto& e : g.edges)
        os << "  v" << e.from << " -> v" << e.to << " [label=\""
           << g.pulses.generators[e.pulse].label << (e.sign > 0 ? "+" : "-")
           << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace qseq
