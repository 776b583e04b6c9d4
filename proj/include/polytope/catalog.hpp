#pragma once

// JSON persistence of eigentope records. The catalog file holds one JSON
// array; writes append-merge against the existing content, deduplicating on
// (word, rounded evec), and keep a deterministic sort order.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <tuple>
#include <vector>

#include "polytope/eigentopes.hpp"
#include "polytope/error.hpp"

namespace polytope {

using ordered_json = nlohmann::ordered_json;

namespace detail {

// JSON has no infinities; an infinite f-component (a flat dihedral angle) is
// stored as the string "inf".
inline ordered_json json_extended(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

inline double extended_from_json(const ordered_json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

inline ordered_json to_json(const EigentopeRecord& r) {
    ordered_json j;
    j["word"] = r.word;
    j["evec"] = r.evec;
    j["q"] = r.q;
    j["lambda_q"] = r.lambda_q;
    j["spin_j"] = r.spin_j;
    j["signature"] = r.signature;
    j["fp_residual"] = r.fp_residual;
    j["ortho_residual"] = r.ortho_residual;
    j["det_residual"] = r.det_residual;
    j["f_symbol"] = ordered_json::array();
    for (double f : r.f_symbol) j["f_symbol"].push_back(detail::json_extended(f));
    return j;
}

inline EigentopeRecord record_from_json(const ordered_json& j) {
    EigentopeRecord r;
    r.word = j.at("word").get<std::string>();
    r.evec = j.at("evec").get<std::vector<double>>();
    r.q = j.at("q").get<int>();
    r.lambda_q = j.at("lambda_q").get<double>();
    r.spin_j = j.at("spin_j").get<double>();
    r.signature = j.at("signature").get<std::string>();
    r.fp_residual = j.at("fp_residual").get<double>();
    r.ortho_residual = j.at("ortho_residual").get<double>();
    r.det_residual = j.at("det_residual").get<double>();
    for (const auto& f : j.at("f_symbol")) r.f_symbol.push_back(detail::extended_from_json(f));
    return r;
}

namespace detail {
inline std::vector<long long> dedup_key_evec(const std::vector<double>& evec) {
    std::vector<long long> out;
    out.reserve(evec.size());
    for (double c : evec) out.push_back(std::llround(c * 1e6));
    return out;
}
}  // namespace detail

/// Load a catalog file; a missing file is an empty catalog.
inline std::vector<EigentopeRecord> load_catalog(const std::filesystem::path& file) {
    std::vector<EigentopeRecord> out;
    std::ifstream in(file);
    if (!in) return out;
    ordered_json j;
    in >> j;
    if (!j.is_array()) throw Error("catalog file " + file.string() + " is not a JSON array");
    for (const auto& item : j) out.push_back(record_from_json(item));
    return out;
}

/// Merge new records into the catalog file: existing + new, deduplicated on
/// (word, evec rounded to 1e-6), sorted by (word, evec). Returns the merged
/// record count.
inline std::size_t append_catalog(const std::filesystem::path& file,
                                  const std::vector<EigentopeRecord>& fresh) {
    std::vector<EigentopeRecord> all = load_catalog(file);
    all.insert(all.end(), fresh.begin(), fresh.end());

    std::sort(all.begin(), all.end(), [](const EigentopeRecord& a, const EigentopeRecord& b) {
        return std::tie(a.word, a.evec) < std::tie(b.word, b.evec);
    });
    std::vector<EigentopeRecord> merged;
    for (auto& r : all) {
        if (!merged.empty() && merged.back().word == r.word &&
            detail::dedup_key_evec(merged.back().evec) == detail::dedup_key_evec(r.evec)) {
            continue;
        }
        merged.push_back(std::move(r));
    }

    ordered_json j = ordered_json::array();
    for (const auto& r : merged) j.push_back(to_json(r));
    std::ofstream out(file);
    if (!out) throw Error("cannot write catalog file " + file.string());
    out << j.dump(2) << '\n';
    return merged.size();
}

}  // namespace polytope
