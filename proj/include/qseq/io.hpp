#pragma once

// Result emission (CSV/JSON), run manifests, and unit conversions for the
// command-line front end. All floats are printed with 12 significant digits
// in a fixed field order so identical configs produce identical bytes.

#include "qseq/manybody.hpp"
#include "qseq/sensing.hpp"

#include <string>

namespace qseq {

inline constexpr const char* toolkit_version = "1.0.0";

// External files use MHz and ns; everything internal is rad/s and s.
double mhz_to_rad(double mhz);
double rad_to_mhz(double rad);
double ns_to_s(double ns);
double s_to_ns(double s);

// 12 significant digits, locale-independent.
std::string format_double(double v);

struct RunManifest {
    std::string command;      // full argv line
    std::string config_hash;  // FNV-1a hex over the canonical config text
    std::uint64_t seed = 0;
    std::string version = toolkit_version;
    std::string timestamp;    // ISO-8601 UTC, filled at emission
};

std::string hash_text(const std::string& text); // FNV-1a, 16 hex digits
std::string manifest_to_json(const RunManifest& m);

// CSV emitters. Field orders are fixed; an empty result yields the header
// line only.
std::string decay_result_to_csv(const ExperimentResult& r);
std::string scar_result_to_csv(const ExperimentResult& r);
// Table-shaped sensing CSV: name, the 9 (or 4) entries of the normalized
// average row-major (re and im), the eigenvalues, and the gap.
std::string sensing_table_to_csv(const std::vector<SensingReport>& reports);
// Generic two-column scan (e.g. epsilon vs metric).
std::string scan_to_csv(const std::string& xname, const std::string& yname,
                        const std::vector<double>& x, const std::vector<double>& y);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace qseq
