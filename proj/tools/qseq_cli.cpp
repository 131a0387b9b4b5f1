// Command-line front end: graph construction, decoupling weight solves, walk
// compilation, sequence inspection, average-Hamiltonian and robustness
// analysis, sensing tables, many-body simulations, and the self-check suite.
//
// External units are MHz and ns; everything internal is rad/s and seconds.
// Every command writes its results plus a run manifest into --out; identical
// config + seed produce byte-identical result files.

#include "qseq/aht.hpp"
#include "qseq/decoupling.hpp"
#include "qseq/graph.hpp"
#include "qseq/io.hpp"
#include "qseq/library.hpp"
#include "qseq/manybody.hpp"
#include "qseq/sensing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace qseq;
using nlohmann::ordered_json;

namespace {

constexpr int EXIT_USAGE = 1;
constexpr int EXIT_INFEASIBLE = 2;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;
    ordered_json config; // parsed --config file (empty object when absent)
    std::string argv_line;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--config", c.config_path, "JSON config file");
    cmd->add_option("--out", c.out_dir, "output directory");
    cmd->add_option("--seed", c.seed, "RNG seed (64-bit)");
    cmd->add_option("--threads", c.threads,
                    "worker threads (env override TOOLKIT_THREADS)");
}

void prepare(CommonOpts& c) {
    if (const char* env = std::getenv("TOOLKIT_THREADS")) c.threads = std::atoi(env);
    if (c.threads > 0) Eigen::setNbThreads(c.threads);
    c.config = ordered_json::object();
    if (!c.config_path.empty()) {
        std::string text;
        try {
            text = read_text_file(c.config_path);
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string("config: ") + e.what());
        }
        try {
            c.config = ordered_json::parse(text);
        } catch (const std::exception& e) {
            throw std::invalid_argument(c.config_path + ": malformed JSON: " + e.what());
        }
        if (!c.config.is_object())
            throw std::invalid_argument(c.config_path + ": top level must be an object");
        if (c.config.contains("seed")) c.seed = c.config["seed"].get<std::uint64_t>();
    }
    std::filesystem::create_directories(c.out_dir);
}

// Config lookup with flag fallback; errors name the file and field.
template <typename T>
T cfg_get(const CommonOpts& c, const std::string& field, T fallback) {
    if (!c.config.contains(field)) return fallback;
    try {
        return c.config[field].get<T>();
    } catch (const std::exception&) {
        throw std::invalid_argument(c.config_path + ": field '" + field +
                                    "' has the wrong type");
    }
}

void emit_manifest(const CommonOpts& c, const ordered_json& effective_config) {
    RunManifest m;
    m.command = c.argv_line;
    m.config_hash = hash_text(effective_config.dump());
    m.seed = c.seed;
    write_text_file(c.out_dir + "/manifest.json", manifest_to_json(m));
}

const WeightedFrames& frame_set_by_name(const std::string& set) {
    if (set == "paper12") return frames12();
    if (set == "paper12alt") return frames12_alternate();
    if (set == "cyl6") return frames_cyl6();
    if (set == "hord8") return frames_hord8();
    if (set == "nongeo12") return frames_nongeodesic12();
    if (set == "wahuha") return frames_wahuha();
    throw std::invalid_argument("unknown frame set: " + set);
}

DecouplingTarget target_by_name(const std::string& target, int dim) {
    DecouplingTarget t;
    if (target == "full") return t;
    if (target == "interaction") {
        t.kill_disorder_z = t.kill_disorder_z2 = false;
        return t;
    }
    if (target == "disorder") {
        t.kill_interaction = false;
        return t;
    }
    if (target == "scar-xy") {
        auto ops = spin_operators(dim);
        t.kill_interaction = false;
        t.interaction_proportional = true;
        t.interaction_pattern =
            traceless(kron(ops.Sx, ops.Sx) + kron(ops.Sy, ops.Sy));
        return t;
    }
    throw std::invalid_argument("unknown target: " + target);
}

HamiltonianSpec spec_for_dim(int dim) {
    HamiltonianSpec spec;
    spec.model = dim == 2 ? ModelKind::spin_half_dipolar : ModelKind::spin1_dipolar;
    spec.coupling_scale = 1.0;
    return spec;
}

int cmd_graph_build(CommonOpts& c, const std::string& pulses, int depth) {
    prepare(c);
    const PulseSet& ps = pulses == "qubit" ? default_qubit_pulses()
                                           : default_qutrit_pulses();
    const int dim = pulses == "qubit" ? 2 : 3;
    FrameGraph g = build_graph(spin_operators(dim).Sz, ps, depth);
    write_text_file(c.out_dir + "/graph.json", graph_to_json(g));
    write_text_file(c.out_dir + "/graph.dot", graph_to_dot(g));
    emit_manifest(c, {{"command", "graph build"}, {"pulses", pulses}, {"depth", depth}});
    std::cout << "graph: " << g.vertices.size() << " vertices, " << g.edges.size()
              << " edges -> " << c.out_dir << "/graph.{json,dot}\n";
    return 0;
}

int cmd_frames_solve(CommonOpts& c, const std::string& set, const std::string& target) {
    prepare(c);
    const auto& fs = frame_set_by_name(set);
    const int dim = static_cast<int>(fs.frames[0].rows());
    SolveResult r = solve_weights(fs.frames, fs.unitaries, spec_for_dim(dim),
                                  target_by_name(target, dim));
    std::ostringstream csv;
    csv << "label,weight\n";
    if (r.feasible)
        for (size_t i = 0; i < fs.labels.size(); ++i)
            csv << fs.labels[i] << "," << format_double(r.set.weights[i]) << "\n";
    write_text_file(c.out_dir + "/weights.csv", csv.str());
    emit_manifest(c, {{"command", "frames solve"}, {"set", set}, {"target", target}});
    if (!r.feasible) {
        std::cout << "infeasible (phase-1 objective "
                  << format_double(r.infeasibility_certificate) << ")\n";
        return EXIT_INFEASIBLE;
    }
    std::cout << "feasible; residual " << format_double(r.set.residual) << " -> "
              << c.out_dir << "/weights.csv\n";
    return 0;
}

int cmd_compile(CommonOpts& c, const std::string& set, const std::string& target,
                double tau_ns, double tp_ns) {
    prepare(c);
    tau_ns = cfg_get(c, "tau_ns", tau_ns);
    tp_ns = cfg_get(c, "tp_ns", tp_ns);
    const auto& fs = frame_set_by_name(set);
    const int dim = static_cast<int>(fs.frames[0].rows());
    if (dim != 3)
        throw std::invalid_argument("compile: only qutrit frame sets are compilable");
    SolveResult r = solve_weights(fs.frames, fs.unitaries, spec_for_dim(dim),
                                  target_by_name(target, dim));
    if (!r.feasible) {
        std::cout << "infeasible: no decoupling weights for set " << set << "\n";
        return EXIT_INFEASIBLE;
    }
    FrameGraph g = build_graph(spin_operators(3).Sz, default_qutrit_pulses(), 3);
    WeightedFrameRequirement req{fs.frames, r.set.weights};
    FrameWalk walk = find_walk(g, req);
    Timing timing{ns_to_s(tau_ns), ns_to_s(tp_ns)};
    PulseSequence seq = compile_walk(walk, g, timing);
    seq.name = "COMPILED_" + set;
    write_text_file(c.out_dir + "/sequence.json", sequence_to_json(seq));
    emit_manifest(c, {{"command", "compile"}, {"set", set}, {"target", target},
                      {"tau_ns", tau_ns}, {"tp_ns", tp_ns}});
    std::cout << "compiled " << seq.pulse_count() << " pulses, cycle "
              << format_double(s_to_ns(seq.cycle_time())) << " ns -> " << c.out_dir
              << "/sequence.json\n";
    return 0;
}

int cmd_sequence_show(CommonOpts& c, const std::string& name) {
    prepare(c);
    const PulseSequence& seq = library_sequence(name);
    std::string text = sequence_to_json(seq);
    write_text_file(c.out_dir + "/sequence.json", text);
    emit_manifest(c, {{"command", "sequence show"}, {"name", name}});
    std::cout << text;
    return 0;
}

int cmd_analyze_aht(CommonOpts& c, const std::string& name, bool finite) {
    prepare(c);
    const PulseSequence& seq = library_sequence(name);
    HamiltonianSpec spec = spec_for_dim(seq.dim);
    auto rep = average_hamiltonian(seq, spec, finite);
    ordered_json j;
    j["sequence"] = name;
    j["finite_pulses"] = finite;
    j["cycle_time_ns"] = s_to_ns(rep.cycle_time);
    for (const auto& [k, v] : rep.coefficient_norm)
        j["coefficient_norm"][k] = v;
    write_text_file(c.out_dir + "/aht.json", j.dump(2) + "\n");
    emit_manifest(c, {{"command", "analyze aht"}, {"sequence", name},
                      {"finite_pulses", finite}});
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_analyze_robustness(CommonOpts& c, const std::string& name) {
    prepare(c);
    const PulseSequence& seq = library_sequence(name);
    ordered_json j;
    j["sequence"] = name;
    for (const std::string mode : {"common", "t1", "t2"}) {
        auto probe = rotation_error_scan(seq, mode, {1e-6, 3e-6, 1e-5, 3e-5, 1e-4});
        write_text_file(c.out_dir + "/rotation_" + mode + ".csv",
                        scan_to_csv("epsilon", "metric", probe.epsilons, probe.metrics));
        j["rotation"][mode]["derivative_at_zero"] = probe.derivative_at_zero;
        j["rotation"][mode]["scale"] = probe.scale;
    }
    for (const std::string term : {"h", "D"}) {
        std::vector<double> scales;
        for (int k = 0; k < 6; ++k)
            scales.push_back(2 * PI * 1e4 * std::pow(2.0, k));
        auto fit = disorder_scaling(seq, term, scales);
        write_text_file(c.out_dir + "/disorder_" + term + ".csv",
                        scan_to_csv("scale_rad_s", "metric", fit.scales, fit.metrics));
        j["disorder"][term]["exponent"] = fit.exponent;
    }
    write_text_file(c.out_dir + "/robustness.json", j.dump(2) + "\n");
    emit_manifest(c, {{"command", "analyze robustness"}, {"sequence", name}});
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_sense_table(CommonOpts& c, bool builtin, const std::string& name) {
    prepare(c);
    std::vector<PulseSequence> seqs;
    if (builtin || name.empty()) {
        seqs = {library_sequence(LibraryName::WAHUHA),
                library_sequence(LibraryName::CYL6),
                library_sequence(LibraryName::HORD_QUTRIT_8)};
    } else {
        seqs = {library_sequence(name)};
    }
    // The builtin table mixes qubit and qutrit entries, so build the reports
    // one by one instead of through compare_sequences.
    std::vector<SensingReport> reports;
    for (const auto& s : seqs) reports.push_back(sensing_average(s));
    std::stable_sort(reports.begin(), reports.end(),
                     [](const SensingReport& a, const SensingReport& b) {
                         return a.gap > b.gap;
                     });
    std::string csv = sensing_table_to_csv(reports);
    write_text_file(c.out_dir + "/sense_table.csv", csv);
    emit_manifest(c, {{"command", "sense table"}, {"builtin", builtin},
                      {"sequence", name}});
    for (const auto& r : reports)
        std::cout << r.name << "  dlambda " << format_double(r.gap) << "\n";
    return 0;
}

int cmd_simulate_decay(CommonOpts& c, std::string name, int n_spins, int realizations,
                       int max_cycles) {
    prepare(c);
    name = cfg_get(c, "sequence", name);
    EnsembleConfig cfg;
    cfg.n_spins = cfg_get(c, "n_spins", n_spins);
    cfg.realizations = cfg_get(c, "realizations", realizations);
    cfg.seed = c.seed;
    cfg.spec.model = ModelKind::spin1_dipolar;
    cfg.spec.disorder_z = mhz_to_rad(cfg_get(c, "disorder_z_mhz", 4.0));
    cfg.spec.disorder_z2 = mhz_to_rad(cfg_get(c, "disorder_z2_mhz", 1.0));
    cfg.spec.coupling_scale = mhz_to_rad(cfg_get(c, "coupling_mhz", 0.035));
    cfg.spec.coupling_mode = CouplingMode::gaussian;
    max_cycles = cfg_get(c, "max_cycles", max_cycles);
    const PulseSequence& seq = library_sequence(name);
    std::vector<int> grid;
    for (int k = 1; k <= max_cycles; ++k) grid.push_back(k);
    auto result = decay_experiment(seq, cfg, grid);
    write_text_file(c.out_dir + "/decay.csv", decay_result_to_csv(result));
    emit_manifest(c, {{"command", "simulate decay"}, {"sequence", name},
                      {"n_spins", cfg.n_spins}, {"realizations", cfg.realizations},
                      {"max_cycles", max_cycles}, {"seed", cfg.seed}});
    std::cout << "decay: " << grid.size() << " cycles x " << cfg.realizations
              << " realizations -> " << c.out_dir << "/decay.csv\n";
    return 0;
}

int cmd_simulate_scar(CommonOpts& c, int n1, int n2, int max_cycles) {
    prepare(c);
    EnsembleConfig cfg;
    cfg.n1 = cfg_get(c, "n1", n1);
    cfg.n2 = cfg_get(c, "n2", n2);
    cfg.seed = c.seed;
    cfg.spec.model = ModelKind::scar_bipartite;
    cfg.spec.coupling_scale = mhz_to_rad(cfg_get(c, "coupling_mhz", 0.035));
    cfg.spec.scar_field = mhz_to_rad(cfg_get(c, "field_mhz", 0.025));
    cfg.spec.coupling_mode = CouplingMode::uniform;
    max_cycles = cfg_get(c, "max_cycles", max_cycles);
    std::vector<int> grid;
    for (int k = 1; k <= max_cycles; ++k) grid.push_back(k);
    auto result = scar_experiment(cfg, grid);
    write_text_file(c.out_dir + "/scar.csv", scar_result_to_csv(result));
    emit_manifest(c, {{"command", "simulate scar"}, {"n1", cfg.n1}, {"n2", cfg.n2},
                      {"max_cycles", max_cycles}, {"seed", cfg.seed}});
    std::cout << "scar: " << grid.size() << " cycles, groups " << cfg.n1 << "+"
              << cfg.n2 << " -> " << c.out_dir << "/scar.csv\n";
    return 0;
}

int cmd_verify_all(CommonOpts& c) {
    prepare(c);
    int failures = 0;
    auto check = [&](const std::string& what, bool ok) {
        std::cout << (ok ? "  ok   " : "  FAIL ") << what << "\n";
        if (!ok) ++failures;
    };

    for (const auto& name : library_names()) {
        const PulseSequence& seq = library_sequence(name);
        std::cout << name << "\n";
        check("round trip", [&] {
            PulseSequence back = sequence_from_json(sequence_to_json(seq));
            if (back.segments.size() != seq.segments.size()) return false;
            return (back.net_rotation - seq.net_rotation).norm() < 1e-9;
        }());
        check("cyclic flag matches net rotation", [&] {
            Mat offdiag = seq.net_rotation;
            offdiag.diagonal().setZero();
            return seq.cyclic == (offdiag.norm() < 1e-9);
        }());
        check("frame trace is valid", [&] {
            auto tr = seq.frame_trace();
            for (const auto& f : tr.frames)
                if (!is_frame(f, seq.dim)) return false;
            return !tr.frames.empty();
        }());
        check("2-spin propagator matches Floquet oracle", [&] {
            HamiltonianSpec spec = spec_for_dim(seq.dim);
            SpinSystem sys;
            sys.n = 2;
            sys.dim_site = seq.dim;
            sys.model = spec.model;
            sys.h = Eigen::VectorXd::Constant(2, 1e5);
            sys.D = Eigen::VectorXd::Constant(2, 5e4);
            sys.J = Eigen::MatrixXd::Constant(2, 2, spec.coupling_scale);
            sys.J.diagonal().setZero();
            Mat U_sim = cycle_unitary(seq, sys);
            Mat H1 = 1e5 * spin_operators(seq.dim).Sz +
                     5e4 * spin_operators(seq.dim).Sz2;
            FloquetOptions opt;
            opt.n_spins = 2;
            auto fl = floquet_effective_hamiltonian(seq, H1, spec, opt);
            return (U_sim - fl.cycle_unitary).norm() < 1e-9;
        }());
    }
    std::cout << "frame-set identities\n";
    {
        const auto& fs = frames12();
        HamiltonianSpec spec = spec_for_dim(3);
        DecouplingTarget t;
        check("paper12 uniform weights decouple everything",
              verify_weights(fs.frames, fs.unitaries, fs.weights, spec, t) < 1e-9);
    }
    emit_manifest(c, {{"command", "verify all"}});
    if (failures) {
        std::cout << failures << " check(s) failed\n";
        return EXIT_INFEASIBLE;
    }
    std::cout << "all checks passed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qutrit dynamical-decoupling sequence toolkit"};
    app.require_subcommand(1);

    std::string argv_line;
    for (int i = 0; i < argc; ++i)
        argv_line += (i ? " " : "") + std::string(argv[i]);

    CommonOpts copts;
    copts.argv_line = argv_line;
    int rc = 0;
    auto run = [&](auto fn) { return [&, fn]() { rc = fn(); }; };

    auto* graph = app.add_subcommand("graph", "frame graph construction");
    {
        auto* build = graph->add_subcommand("build", "BFS frame graph from a pulse set");
        static std::string pulses = "qutrit";
        static int depth = 1;
        build->add_option("--pulses", pulses, "qutrit|qubit");
        build->add_option("--depth", depth, "BFS depth");
        add_common(build, copts);
        build->callback(run([&] { return cmd_graph_build(copts, pulses, depth); }));
    }
    auto* frames = app.add_subcommand("frames", "decoupling weight solves");
    {
        auto* solve = frames->add_subcommand("solve", "LP weight solve over a frame set");
        static std::string set = "paper12", target = "full";
        solve->add_option("--set", set, "paper12|paper12alt|cyl6|hord8|nongeo12|wahuha");
        solve->add_option("--target", target, "full|interaction|disorder|scar-xy");
        add_common(solve, copts);
        solve->callback(run([&] { return cmd_frames_solve(copts, set, target); }));
    }
    {
        auto* compile = app.add_subcommand("compile", "compile a weighted frame walk");
        static std::string set = "paper12", target = "full";
        static double tau_ns = 25.0, tp_ns = 8.0;
        compile->add_option("--set", set, "frame set");
        compile->add_option("--target", target, "decoupling target");
        compile->add_option("--tau-ns", tau_ns, "dwell per unit weight (ns)");
        compile->add_option("--tp-ns", tp_ns, "pi/2 pulse duration (ns)");
        add_common(compile, copts);
        compile->callback(
            run([&] { return cmd_compile(copts, set, target, tau_ns, tp_ns); }));
    }
    {
        auto* show = app.add_subcommand("sequence", "sequence inspection")
                         ->add_subcommand("show", "print a library sequence");
        static std::string name;
        show->add_option("name", name, "library sequence name")->required();
        add_common(show, copts);
        show->callback(run([&] { return cmd_sequence_show(copts, name); }));
    }
    auto* analyze = app.add_subcommand("analyze", "effective Hamiltonian analysis");
    {
        auto* aht = analyze->add_subcommand("aht", "zeroth-order averages");
        static std::string name = "SEQC_DROID_C3PO";
        static bool finite = false;
        aht->add_option("--sequence", name, "library sequence name");
        aht->add_flag("--finite-pulses", finite, "include in-pulse averages");
        add_common(aht, copts);
        aht->callback(run([&] { return cmd_analyze_aht(copts, name, finite); }));

        auto* rob = analyze->add_subcommand("robustness", "error scans via the Floquet oracle");
        static std::string rname = "SEQC_DROID_C3PO";
        rob->add_option("--sequence", rname, "library sequence name");
        add_common(rob, copts);
        rob->callback(run([&] { return cmd_analyze_robustness(copts, rname); }));
    }
    {
        auto* sense = app.add_subcommand("sense", "DC sensing averages")
                          ->add_subcommand("table", "tabulated sensing comparison");
        static bool builtin = false;
        static std::string name;
        sense->add_flag("--builtin", builtin, "the three tabulated reference sequences");
        sense->add_option("--sequence", name, "single library sequence");
        add_common(sense, copts);
        sense->callback(run([&] { return cmd_sense_table(copts, builtin, name); }));
    }
    auto* simulate = app.add_subcommand("simulate", "many-body simulations");
    {
        auto* decay = simulate->add_subcommand("decay", "decoupling decay experiment");
        static std::string name = "SEQC_DROID_C3PO";
        static int n_spins = 4, realizations = 20, max_cycles = 10;
        decay->add_option("--sequence", name, "library sequence name");
        decay->add_option("--n-spins", n_spins, "ensemble size");
        decay->add_option("--realizations", realizations, "disorder realizations");
        decay->add_option("--max-cycles", max_cycles, "stroboscopic grid length");
        add_common(decay, copts);
        decay->callback(run([&] {
            return cmd_simulate_decay(copts, name, n_spins, realizations, max_cycles);
        }));

        auto* scar = simulate->add_subcommand("scar", "scar-dynamics experiment");
        static int n1 = 3, n2 = 3, max_cycles_s = 50;
        scar->add_option("--n1", n1, "first group size");
        scar->add_option("--n2", n2, "second group size");
        scar->add_option("--max-cycles", max_cycles_s, "stroboscopic grid length");
        add_common(scar, copts);
        scar->callback(run([&] { return cmd_simulate_scar(copts, n1, n2, max_cycles_s); }));
    }
    {
        auto* verify = app.add_subcommand("verify", "self checks")
                           ->add_subcommand("all", "library-wide property suite");
        add_common(verify, copts);
        verify->callback(run([&] { return cmd_verify_all(copts); }));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_INFEASIBLE;
    }
    return rc;
}
