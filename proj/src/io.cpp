#include "qseq/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace qseq {

double mhz_to_rad(double mhz) { return 2.0 * PI * mhz * 1e6; }
double rad_to_mhz(double rad) { return rad / (2.0 * PI * 1e6); }
double ns_to_s(double ns) { return ns * 1e-9; }
double s_to_ns(double s) { return s * 1e9; }

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string hash_text(const std::string& text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string manifest_to_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["config_hash"] = m.config_hash;
    j["seed"] = m.seed;
    j["version"] = m.version;
    std::string ts = m.timestamp;
    if (ts.empty()) {
        std::time_t t = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        ts = buf;
    }
    j["timestamp"] = ts;
    return j.dump(2) + "\n";
}

namespace {

std::string experiment_csv(const ExperimentResult& r, bool with_overlap) {
    std::ostringstream out;
    out << "cycle,time_ns";
    for (const auto& lbl : r.state_labels) out << ",sig_" << lbl;
    out << ",mean";
    if (with_overlap)
        for (const auto& lbl : r.state_labels) out << ",scar_" << lbl;
    out << "\n";
    for (size_t gi = 0; gi < r.cycles.size(); ++gi) {
        out << r.cycles[gi] << "," << format_double(r.time_ns[gi]);
        for (size_t si = 0; si < r.signal.size(); ++si)
            out << "," << format_double(r.signal[si][gi]);
        out << "," << format_double(r.mean[gi]);
        if (with_overlap)
            for (size_t si = 0; si < r.scar_overlap.size(); ++si)
                out << "," << format_double(r.scar_overlap[si][gi]);
        out << "\n";
    }
    return out.str();
}

} // namespace

std::string decay_result_to_csv(const ExperimentResult& r) {
    return experiment_csv(r, false);
}

std::string scar_result_to_csv(const ExperimentResult& r) {
    return experiment_csv(r, true);
}

std::string sensing_table_to_csv(const std::vector<SensingReport>& reports) {
    std::ostringstream out;
    int d = 3;
    for (const auto& rep : reports)
        d = std::max(d, static_cast<int>(rep.H_sense.rows()));
    out << "name";
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out << ",H" << i << j << "_re,H" << i << j << "_im";
    for (int i = 0; i < d; ++i) out << ",lambda" << i;
    out << ",gap\n";
    // Smaller-dimension rows (e.g. qubit sequences in a qutrit table) fill the
    // top-left block and leave the remaining fields empty.
    for (const auto& rep : reports) {
        const int dr = static_cast<int>(rep.H_sense.rows());
        out << rep.name;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i < dr && j < dr)
                    out << "," << format_double(rep.H_sense(i, j).real()) << ","
                        << format_double(rep.H_sense(i, j).imag());
                else
                    out << ",,";
            }
        for (int i = 0; i < d; ++i)
            out << "," << (i < dr ? format_double(rep.eigenvalues(i)) : "");
        out << "," << format_double(rep.gap) << "\n";
    }
    return out.str();
}

std::string scan_to_csv(const std::string& xname, const std::string& yname,
                        const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("scan_to_csv: column length mismatch");
    std::ostringstream out;
    out << xname << "," << yname << "\n";
    for (size_t i = 0; i < x.size(); ++i)
        out << format_double(x[i]) << "," << format_double(y[i]) << "\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace qseq
