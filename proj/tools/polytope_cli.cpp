// Command-line surface for the generalized regular polytope engine.
//
// Subcommands: convert, transform, matrix, order, relations, eigen, spin,
// scan, tessellate, tables. Output formats: text (default), json, csv.
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "CLI11.hpp"

#include "polytope/catalog.hpp"
#include "polytope/eigentopes.hpp"
#include "polytope/metric.hpp"
#include "polytope/reference_data.hpp"
#include "polytope/symbols.hpp"
#include "polytope/tessellation.hpp"
#include "polytope/words.hpp"

namespace {

using nlohmann::ordered_json;
using namespace polytope;

constexpr int kExitOk = 0;
constexpr int kExitComputational = 1;
constexpr int kExitUsage = 2;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Parse one numeric token: decimal, fraction "p/q", or a named constant.
double parse_value(const std::string& token) {
    for (const NamedConstant& c : named_constants())
        if (c.token == token) return c.value;
    if (token == "inf" || token == "+inf") return kInfinity;
    const auto slash = token.find('/');
    try {
        if (slash != std::string::npos) {
            const double num = std::stod(token.substr(0, slash));
            const double den = std::stod(token.substr(slash + 1));
            if (den == 0.0) throw CLI::ValidationError("zero denominator in '" + token + "'");
            return num / den;
        }
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size())
            throw CLI::ValidationError("cannot parse number '" + token + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("cannot parse number '" + token + "'");
    }
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(parse_value(tok));
    }
    return out;
}

struct TypedSymbol {
    std::string kind;  // "f", "e", "h", "rho"
    std::vector<double> values;
};

/// Symbols are written kind:comma-list, e.g. f:4,3,3 or e:0.5,0.25,0.25;
/// a bare comma list is an E-symbol.
TypedSymbol parse_symbol(const std::string& text) {
    TypedSymbol s;
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        s.kind = "e";
        s.values = parse_values(text);
    } else {
        s.kind = text.substr(0, colon);
        s.values = parse_values(text.substr(colon + 1));
    }
    if (s.kind != "f" && s.kind != "e" && s.kind != "h" && s.kind != "rho")
        throw CLI::ValidationError("unknown symbol prefix '" + s.kind + "'");
    return s;
}

ESymbol3 as_e3(const std::vector<double>& v) {
    if (v.size() != 2) throw CLI::ValidationError("expected 2 E-components");
    return {v[0], v[1]};
}

ESymbol4 as_e4(const std::vector<double>& v) {
    if (v.size() != 3) throw CLI::ValidationError("expected 3 E-components");
    return {v[0], v[1], v[2]};
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& f) {
    if (f == "text") return Format::Text;
    if (f == "json") return Format::Json;
    if (f == "csv") return Format::Csv;
    throw CLI::ValidationError("unknown format '" + f + "'");
}

struct GlobalOptions {
    double tol = kDefaultTol;
    std::uint64_t seed = 20240401;
    std::string format = "text";
    std::string data_dir = POLYTOPE_DATA_DIR;
    std::string catalog = "./eigentopes.json";
    double box_min = -0.5;
    double box_max = 2.0;
    double grid_step = 0.05;
    int max_q = 32;
    int max_len = 3;
};

void emit(const ordered_json& j, Format fmt) {
    if (fmt == Format::Json) {
        std::cout << j.dump(2) << "\n";
    }
}

// ---------------------------------------------------------------------------

int cmd_convert(const GlobalOptions& g, const std::string& symbol_text) {
    const TypedSymbol s = parse_symbol(symbol_text);
    const Format fmt = parse_format(g.format);
    ordered_json j;
    j["input"] = {{"kind", s.kind}, {"values", s.values}};

    std::vector<double> e_values;
    if (s.kind == "f") {
        e_values = f_to_e(FSymbol{s.values});
    } else if (s.kind == "e") {
        e_values = s.values;
    } else if (s.kind == "h") {
        if (s.values.size() != 3) throw CLI::ValidationError("h-symbol needs 3 components");
        const RhoVector rho = h_to_rho({s.values[0], s.values[1], s.values[2]}, 1.0);
        const ESymbol4 e = rho_to_e(rho);
        e_values = {e.epsilon, e.delta, e.eta};
        j["rho"] = {rho.rho0, rho.rho1, rho.rho2, rho.rho3};
    } else {  // rho
        if (s.values.size() != 4) throw CLI::ValidationError("rho-vector needs 4 components");
        const ESymbol4 e = rho_to_e({s.values[0], s.values[1], s.values[2], s.values[3]});
        e_values = {e.epsilon, e.delta, e.eta};
    }
    j["e"] = e_values;

    std::string text = "e:[" + join(e_values) + "]";
    // f-symbol wherever every component lies in (0,1]
    bool f_ok = true;
    for (double c : e_values) f_ok = f_ok && c > 0.0 && c <= 1.0;
    if (f_ok) {
        std::vector<double> f;
        for (double c : e_values) f.push_back(f_from_cos2(c));
        j["f"] = f;
        text += " f:{" + join(f) + "}";
    }
    if (e_values.size() == 3) {
        try {
            const HSymbol h = e_to_h(as_e4(e_values));
            j["h"] = {h.alpha, h.beta, h.gamma};
            j["rho_unit"] = [&] {
                const RhoVector r = h_to_rho(h, 1.0);
                return std::vector<double>{r.rho0, r.rho1, r.rho2, r.rho3};
            }();
            j["signature"] = to_string(classify_signature(h).label);
            text += " h:[" + join({h.alpha, h.beta, h.gamma}) + "] " +
                    j["signature"].get<std::string>();
        } catch (const DegenerateSymbol& ex) {
            j["h_error"] = ex.what();
        }
    }
    if (fmt == Format::Json)
        emit(j, fmt);
    else
        std::cout << text << "\n";
    return kExitOk;
}

int cmd_transform(const GlobalOptions& g, const std::string& word_text,
                  const std::string& symbol_text, bool trace) {
    const TypedSymbol s = parse_symbol(symbol_text);
    const Format fmt = parse_format(g.format);
    ordered_json j;
    j["word"] = word_text;
    if (s.values.size() == 2) {
        const Word w = parse_word(word_text, Context::E3);
        ESymbol3 e = as_e3(s.values);
        ordered_json steps = ordered_json::array();
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
            e = apply3(w.letters[i], e, i);
            if (trace) {
                steps.push_back({{"step", i}, {"e", {e.epsilon, e.delta}}});
                if (fmt == Format::Text)
                    std::cout << "  step " << i << ": [" << join({e.epsilon, e.delta}) << "]\n";
            }
        }
        j["trace"] = steps;
        j["result"] = {e.epsilon, e.delta};
        if (fmt == Format::Json)
            emit(j, fmt);
        else
            std::cout << "e:[" << join({e.epsilon, e.delta}) << "]\n";
    } else {
        const Word w = parse_word(word_text, Context::E4);
        ESymbol4 e = as_e4(s.values);
        ordered_json steps = ordered_json::array();
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
            e = apply4(w.letters[i], e, i);
            if (trace) {
                steps.push_back({{"step", i}, {"e", {e.epsilon, e.delta, e.eta}}});
                if (fmt == Format::Text)
                    std::cout << "  step " << i << ": [" << join({e.epsilon, e.delta, e.eta})
                              << "]\n";
            }
        }
        j["trace"] = steps;
        j["result"] = {e.epsilon, e.delta, e.eta};
        if (fmt == Format::Json)
            emit(j, fmt);
        else
            std::cout << "e:[" << join({e.epsilon, e.delta, e.eta}) << "]\n";
    }
    return kExitOk;
}

int cmd_matrix(const GlobalOptions& g, const std::string& word_text,
               const std::string& symbol_text) {
    const TypedSymbol s = parse_symbol(symbol_text);
    const Format fmt = parse_format(g.format);
    const Word w = parse_word(word_text, Context::P4);
    const ESymbol4 e = as_e4(s.values);
    const Mat4 x = word_matrix(w, e);

    // Gram cross-check: X G X^T must be in natural form and match the E-image
    const Mat4 gram = gram_natural(h_to_rho(e_to_h(e), 1.0));
    const Mat4 img = x * gram * x.transpose();
    double natural_residual = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            natural_residual =
                std::max(natural_residual,
                         std::abs(img(i, k) - img(std::max(i, k), std::max(i, k))));
    const ESymbol4 back = rho_to_e({img(0, 0), img(1, 1), img(2, 2), img(3, 3)});
    const ESymbol4 fwd = apply_word(parse_word(word_text, Context::E4), e);
    const double e_residual =
        std::max({std::abs(back.epsilon - fwd.epsilon), std::abs(back.delta - fwd.delta),
                  std::abs(back.eta - fwd.eta)});

    ordered_json j;
    j["word"] = word_text;
    j["matrix"] = ordered_json::array();
    for (int i = 0; i < 4; ++i)
        j["matrix"].push_back({x(i, 0), x(i, 1), x(i, 2), x(i, 3)});
    j["det"] = x.determinant();
    j["gram_natural_residual"] = natural_residual;
    j["gram_evec_residual"] = e_residual;
    if (fmt == Format::Json) {
        emit(j, fmt);
    } else {
        for (int i = 0; i < 4; ++i)
            std::cout << "  [" << join({x(i, 0), x(i, 1), x(i, 2), x(i, 3)}) << "]\n";
        std::cout << "det = " << format_double(x.determinant())
                  << "  gram-residual = " << format_double(std::max(natural_residual, e_residual))
                  << "\n";
    }
    return kExitOk;
}

int cmd_order(const GlobalOptions& g, const std::string& word_text, const std::string& ctx,
              int samples) {
    const Context context = ctx == "e3" ? Context::E3 : Context::E4;
    const Word w = parse_word(word_text, context);
    SampleConfig cfg;
    cfg.seed = g.seed;
    cfg.tolerance = g.tol;
    int singular = 0;
    const auto q = period(w, samples, g.max_q, cfg, &singular);
    ordered_json j;
    j["word"] = word_text;
    j["context"] = to_string(context);
    if (q.has_value())
        j["order"] = *q;
    else
        j["order"] = nullptr;
    j["singular_samples"] = singular;
    if (parse_format(g.format) == Format::Json)
        emit(j, Format::Json);
    else if (q.has_value())
        std::cout << "order " << *q << "\n";
    else
        std::cout << "no finite order up to " << g.max_q << "\n";
    return kExitOk;
}

int cmd_relations(const GlobalOptions& g, const std::string& suite_name, int samples) {
    Suite suite;
    if (suite_name == "rrp3")
        suite = Suite::RRP3;
    else if (suite_name == "rrp4")
        suite = Suite::RRP4;
    else if (suite_name == "arp4")
        suite = Suite::ARP4;
    else
        throw CLI::ValidationError("unknown suite '" + suite_name + "'");
    SampleConfig cfg;
    cfg.seed = g.seed;
    cfg.tolerance = suite == Suite::ARP4 ? 1e-8 : g.tol;
    const auto reports = verify_suite(suite, g.data_dir, samples, cfg);
    const Format fmt = parse_format(g.format);
    ordered_json j = ordered_json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        j.push_back({{"word", r.word_text},
                     {"exponent", r.exponent},
                     {"samples", r.samples_tested},
                     {"singular", r.singular_samples},
                     {"max_residual", r.max_residual},
                     {"pass", r.pass}});
        if (fmt == Format::Text) {
            std::printf("%-10s ^%-3d %s  max residual %.3g  (%d samples, %d singular)\n",
                        r.word_text.c_str(), r.exponent, r.pass ? "PASS" : "FAIL",
                        r.max_residual, r.samples_tested, r.singular_samples);
        }
    }
    if (fmt == Format::Json) emit(j, fmt);
    return all_pass ? kExitOk : kExitComputational;
}

int cmd_eigen(const GlobalOptions& g, const std::string& word_text, const std::string& ctx,
              bool oracle) {
    const Context context = ctx == "e3" ? Context::E3 : Context::E4;
    const Word w = parse_word(word_text, context);
    SolverConfig cfg;
    cfg.box_min = g.box_min;
    cfg.box_max = g.box_max;
    cfg.grid_step = g.grid_step;
    const auto roots = find_fixed_points(w, cfg);
    const Format fmt = parse_format(g.format);
    ordered_json j;
    j["word"] = word_text;
    j["roots"] = ordered_json::array();
    int curve_points = 0;
    for (const auto& r : roots) {
        j["roots"].push_back(
            {{"evec", r.evec}, {"residual", r.residual}, {"isolated", r.isolated}});
        if (!r.isolated) {
            ++curve_points;
            continue;
        }
        if (fmt == Format::Text)
            std::cout << "root [" << join(r.evec) << "]  residual " << format_double(r.residual)
                      << "\n";
    }
    if (fmt == Format::Text && curve_points > 0)
        std::cout << curve_points
                  << " further fixed points lie on eigenspace curves or surfaces\n";
    if (oracle) {
        // two directions: every deep minimum must sit at a found root, and
        // every found root must show up as a local minimum of the dense scan
        const auto deep = grid_residual_minima(w, 0.01, 1e-3, cfg);
        const auto all = grid_residual_minima(w, 0.01, 0.5, cfg);
        auto near = [](const std::vector<double>& a, const std::vector<double>& b) {
            double d = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
            return d < 0.03;
        };
        int extras = 0;
        for (const auto& m : deep) {
            bool matched = false;
            for (const auto& r : roots) matched = matched || near(m, r.evec);
            if (!matched) ++extras;
        }
        int missing = 0;
        for (const auto& r : roots) {
            bool found = false;
            for (const auto& m : all) found = found || near(m, r.evec);
            if (!found) ++missing;
        }
        j["oracle_deep_minima"] = deep.size();
        j["oracle_extras"] = extras;
        j["oracle_missing_roots"] = missing;
        if (fmt == Format::Text)
            std::cout << "grid oracle: " << deep.size() << " deep minima, " << extras
                      << " unmatched, " << missing << " roots not reproduced\n";
        if (extras > 0 || missing > 0) {
            emit(j, fmt);
            return kExitComputational;
        }
    }
    if (fmt == Format::Json) emit(j, fmt);
    return kExitOk;
}

int cmd_spin(const GlobalOptions& g, const std::string& word_text, const std::string& evec_text) {
    const Word w = parse_word(word_text, Context::P4);
    SpinConfig cfg;
    cfg.max_q = g.max_q;
    std::vector<ESymbol4> targets;
    if (!evec_text.empty()) {
        auto v = parse_values(evec_text);
        // refine the supplied point to the nearby exact fixed point
        SolverConfig s;
        const auto refined = detail::newton_refine(parse_word(word_text, Context::E4), v, s);
        if (refined.has_value()) v = *refined;
        targets.push_back(as_e4(v));
    } else {
        SolverConfig s;
        s.box_min = g.box_min;
        s.box_max = g.box_max;
        s.grid_step = g.grid_step;
        for (const auto& r : find_fixed_points(parse_word(word_text, Context::E4), s))
            targets.push_back({r.evec[0], r.evec[1], r.evec[2]});
    }
    if (targets.empty()) {
        std::cerr << "no fixed point found for '" << word_text << "'\n";
        return kExitComputational;
    }
    const Format fmt = parse_format(g.format);
    ordered_json j = ordered_json::array();
    for (const ESymbol4& e : targets) {
        const SpinResult s = spin(w, e, cfg);
        const ConformalReport c = conformal_check(w, e, cfg);
        j.push_back({{"word", word_text},
                     {"evec", {e.epsilon, e.delta, e.eta}},
                     {"q", s.q},
                     {"lambda_q", s.lambda_q},
                     {"J", s.spin_j},
                     {"mu", c.mu},
                     {"prop_residual", s.prop_residual},
                     {"ortho_residual", s.ortho_residual},
                     {"det_residual", s.det_residual},
                     {"conformal_residual", c.proportionality_residual},
                     {"even_q_negative_lambda", s.even_q_negative_lambda}});
        if (fmt == Format::Text) {
            const int jnum = s.q - 1;
            const std::string jtext =
                jnum % 2 == 0 ? std::to_string(jnum / 2) : std::to_string(jnum) + "/2";
            std::cout << "evec [" << join({e.epsilon, e.delta, e.eta}) << "]  q=" << s.q
                      << " lambda=" << format_double(s.lambda_q) << " J=" << jtext
                      << "  mu=" << format_double(c.mu)
                      << (s.even_q_negative_lambda ? "  [negative scalar at even q]" : "") << "\n";
        }
    }
    if (fmt == Format::Json) emit(j, fmt);
    return kExitOk;
}

int cmd_scan(const GlobalOptions& g, const std::string& ctx, bool no_prune) {
    const Context context = ctx == "e3" ? Context::E3 : Context::E4;
    ScanConfig cfg;
    cfg.max_len = g.max_len;
    cfg.solver.box_min = g.box_min;
    cfg.solver.box_max = g.box_max;
    cfg.solver.grid_step = g.grid_step;
    cfg.samples.seed = g.seed;
    cfg.prune = !no_prune;
    const ScanSummary summary = scan_words(context, cfg);

    std::size_t total = 0;
    if (context != Context::E3) {
        total = append_catalog(g.catalog, summary.records);
    }
    const Format fmt = parse_format(g.format);
    ordered_json j;
    j["context"] = to_string(context);
    j["words_scanned"] = summary.words_scanned;
    j["words_pruned"] = summary.words_pruned;
    j["records"] = summary.records.size();
    j["curve_points"] = summary.curve_points;
    j["observed_periods"] = summary.observed_periods;
    j["f_component_five_found"] = summary.f_component_five_found;
    j["f_five_words"] = summary.words_with_f_five;
    j["catalog_size"] = total;
    if (fmt == Format::Json) {
        emit(j, fmt);
    } else {
        std::cout << "scanned " << summary.words_scanned << " words (pruned "
                  << summary.words_pruned << "), " << summary.records.size()
                  << " eigentopes, " << summary.curve_points << " on-curve fixed points\n";
        std::cout << "observed finite periods:";
        for (int q : summary.observed_periods) std::cout << " " << q;
        std::cout << "\nf-component near 5: " << (summary.f_component_five_found ? "FOUND" : "none")
                  << "\n";
        if (context != Context::E3) std::cout << "catalog now holds " << total << " records\n";
    }
    return kExitOk;
}

int cmd_tessellate(const GlobalOptions& g, const std::string& symbol_text) {
    const TypedSymbol s = parse_symbol(symbol_text);
    const Format fmt = parse_format(g.format);
    ordered_json j;
    if (s.values.size() == 3) {
        const ESymbol4 e = as_e4(s.values);
        const StarResult star = star_transform(e);
        j["input"] = s.values;
        j["star"] = {star.star.epsilon, star.star.delta, star.star.eta};
        j["mu_residual"] = star.mu_residual;
        j["honeycomb3_residual"] = honeycomb3_residual(e);
        if (fmt == Format::Text) {
            std::cout << "star: [" << join({star.star.epsilon, star.star.delta, star.star.eta})
                      << "]  mu residual " << format_double(star.mu_residual) << "\n";
            std::cout << "3-space honeycomb residual: "
                      << format_double(honeycomb3_residual(e)) << "\n";
        }
        if (fmt == Format::Json) emit(j, fmt);
        return kExitOk;
    }
    const ESymbol3 e = as_e3(s.values);
    const StatsReport rep = stats_report(e);
    j["input"] = s.values;
    j["stats"] = {{"vertices", rep.stats.vertices},
                  {"edges", rep.stats.edges},
                  {"faces", rep.stats.faces},
                  {"edges_per_face", rep.stats.edges_per_face},
                  {"vertex_index", rep.stats.vertex_index}};
    j["covering_vertex_reflection"] = rep.covering_vertex_reflection;
    j["covering_face_reflection"] = rep.covering_face_reflection;
    j["literature"] = ordered_json::array();
    for (const auto& c : rep.comparisons) {
        j["literature"].push_back({{"source", c.source},
                                   {"vertices_rel", c.vertices},
                                   {"edges_rel", c.edges},
                                   {"faces_rel", c.faces},
                                   {"edges_per_face_rel", c.edges_per_face}});
    }
    if (fmt == Format::Csv) {
        std::cout << "field,value\n";
        std::cout << "vertices," << format_double(rep.stats.vertices) << "\n";
        std::cout << "edges," << format_double(rep.stats.edges) << "\n";
        std::cout << "faces," << format_double(rep.stats.faces) << "\n";
        std::cout << "edges_per_face," << format_double(rep.stats.edges_per_face) << "\n";
        for (const auto& c : rep.comparisons) {
            std::cout << "rel_diff_vs_" << c.source << "_vertices," << format_double(c.vertices)
                      << "\n";
        }
    } else if (fmt == Format::Json) {
        emit(j, fmt);
    } else {
        std::printf("y = %.6g  x = %.6g  n = %.6g  m = %.6g\n", rep.stats.vertices,
                    rep.stats.edges, rep.stats.faces, rep.stats.edges_per_face);
        std::printf("covering factors: vertex reflection %.6g, face reflection %.6g\n",
                    rep.covering_vertex_reflection, rep.covering_face_reflection);
        for (const auto& c : rep.comparisons) {
            std::printf("vs %-30s", c.source.c_str());
            auto pr = [](const char* name, double v) {
                if (v >= 0) std::printf("  %s %.2f%%", name, v * 100.0);
            };
            pr("y", c.vertices);
            pr("x", c.edges);
            pr("n", c.faces);
            pr("m", c.edges_per_face);
            std::printf("\n");
        }
    }
    return kExitOk;
}

int cmd_tables(const GlobalOptions& g) {
    const Format fmt = parse_format(g.format);
    ordered_json tables;
    tables["h_tables"] = ordered_json::array();

    struct RowOut {
        std::string table, name;
        double a_tab, b_tab, g_tab, a_cmp, b_cmp, g_cmp;
        bool differs;
    };
    std::vector<RowOut> rows;
    auto process = [&](const char* tname, const std::vector<HTableRow>& table) {
        for (const HTableRow& row : table) {
            const HSymbol h = e_to_h(f_to_e4(row.f));
            auto differs = [&](double tab, double cmp) {
                return std::abs(tab - cmp) > 1e-9 * std::max(1.0, std::abs(cmp));
            };
            rows.push_back({tname, row.name, row.alpha_tabulated, row.beta_tabulated,
                            row.gamma_tabulated, h.alpha, h.beta, h.gamma,
                            differs(row.alpha_tabulated, h.alpha) ||
                                differs(row.beta_tabulated, h.beta) ||
                                differs(row.gamma_tabulated, h.gamma)});
        }
    };
    process("euclidean", euclidean_h_table());
    process("pseudo-euclidean", hyperbolic_h_table());

    if (fmt == Format::Csv) {
        std::cout << "table,polytope,alpha_tab,beta_tab,gamma_tab,alpha,beta,gamma,differs\n";
        for (const auto& r : rows) {
            std::printf("%s,%s,%s,%s,%s,%s,%s,%s,%d\n", r.table.c_str(), r.name.c_str(),
                        format_double(r.a_tab).c_str(), format_double(r.b_tab).c_str(),
                        format_double(r.g_tab).c_str(), format_double(r.a_cmp).c_str(),
                        format_double(r.b_cmp).c_str(), format_double(r.g_cmp).c_str(),
                        r.differs ? 1 : 0);
        }
    } else {
        for (const auto& r : rows) {
            std::printf("%-16s %-8s alpha %-14s beta %-14s gamma %-14s %s\n", r.table.c_str(),
                        r.name.c_str(), format_double(r.a_cmp).c_str(),
                        format_double(r.b_cmp).c_str(), format_double(r.g_cmp).c_str(),
                        r.differs ? "DIFFERS-FROM-TABULATED" : "");
        }
    }
    for (const auto& r : rows) {
        tables["h_tables"].push_back({{"table", r.table},
                                      {"polytope", r.name},
                                      {"tabulated", {r.a_tab, r.b_tab, r.g_tab}},
                                      {"computed", {r.a_cmp, r.b_cmp, r.g_cmp}},
                                      {"differs", r.differs}});
    }

    // spin table reproduction
    tables["spin_table"] = ordered_json::array();
    if (fmt == Format::Csv) std::cout << "q,word,lambda_tab,lambda,q_computed,agrees\n";
    bool all_ok = true;
    for (const SpinTableRow& row : spin_reference_table()) {
        const Word w = parse_word(row.word, Context::P4);
        SolverConfig sc;
        const auto refined = detail::newton_refine(parse_word(row.word, Context::E4),
                                                   {row.epsilon, row.delta, row.eta}, sc);
        if (!refined.has_value()) {
            all_ok = false;
            continue;
        }
        const ESymbol4 e{(*refined)[0], (*refined)[1], (*refined)[2]};
        const SpinResult s = spin(w, e);
        const bool lambda_ok = std::abs(row.lambda) <= 1e-3
                                   ? std::abs(s.lambda_q) <= 10.0 * std::abs(row.lambda)
                                   : std::abs(s.lambda_q - row.lambda) / std::abs(row.lambda) < 0.02;
        const bool agrees = s.q == row.q && lambda_ok;
        all_ok = all_ok && agrees;
        tables["spin_table"].push_back({{"word", row.word},
                                        {"q_tabulated", row.q},
                                        {"q", s.q},
                                        {"lambda_tabulated", row.lambda},
                                        {"lambda", s.lambda_q},
                                        {"agrees", agrees}});
        if (fmt == Format::Csv) {
            std::printf("%d,%s,%s,%s,%d,%d\n", row.q, row.word.c_str(),
                        format_double(row.lambda).c_str(), format_double(s.lambda_q).c_str(),
                        s.q, agrees ? 1 : 0);
        } else if (fmt == Format::Text) {
            std::printf("spin %-10s q=%-3d lambda=%-12s %s\n", row.word.c_str(), s.q,
                        format_double(s.lambda_q).c_str(),
                        agrees ? "ok" : "DIFFERS-FROM-TABULATED");
        }
    }
    if (fmt == Format::Json) emit(tables, fmt);
    return all_ok ? kExitOk : kExitComputational;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational engine for generalized regular polytopes"};
    app.require_subcommand(1);

    GlobalOptions g;
    if (const char* env = std::getenv("POLYTOPE_CATALOG")) g.catalog = env;
    app.add_option("--tol", g.tol, "comparison tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "RNG seed for sampling");
    app.add_option("--format", g.format, "output format: text|json|csv");
    app.add_option("--data-dir", g.data_dir, "relation data directory");
    app.add_option("--catalog", g.catalog, "eigentope catalog file (env POLYTOPE_CATALOG)");
    app.add_option("--box-min", g.box_min, "search box lower bound");
    app.add_option("--box-max", g.box_max, "search box upper bound");
    app.add_option("--grid-step", g.grid_step, "search grid step")->check(CLI::PositiveNumber);
    app.add_option("--max-q", g.max_q, "largest power probed")->check(CLI::PositiveNumber);

    std::string symbol_text, word_text, ctx = "e4", suite;
    std::string evec_text;
    bool trace = false, oracle = false, no_prune = false;
    int samples = 100;

    auto* convert = app.add_subcommand("convert", "convert between symbol kinds");
    convert->add_option("symbol", symbol_text,
                        "prefixed symbol: f:4,3,3 | e:0.5,0.25,0.25 | h:4,2,4/3 | rho:1,0.5,1/3,0.25")
        ->required();

    auto* transform = app.add_subcommand("transform", "apply a word to an E-symbol");
    transform->add_option("word", word_text)->required();
    transform->add_option("symbol", symbol_text)->required();
    transform->add_flag("--trace", trace, "print each intermediate symbol");

    auto* matrix = app.add_subcommand("matrix", "frame matrix of a word with Gram cross-check");
    matrix->add_option("word", word_text)->required();
    matrix->add_option("symbol", symbol_text)->required();

    auto* order = app.add_subcommand("order", "numeric order of a word map");
    order->add_option("word", word_text)->required();
    order->add_option("--context", ctx, "e3|e4");
    order->add_option("--samples", samples);

    auto* relations = app.add_subcommand("relations", "verify a relation suite");
    relations->add_option("suite", suite, "rrp3|rrp4|arp4")->required();
    relations->add_option("--samples", samples);

    auto* eigen = app.add_subcommand("eigen", "fixed points of a word map");
    eigen->add_option("word", word_text)->required();
    eigen->add_option("--context", ctx, "e3|e4");
    eigen->add_flag("--oracle", oracle, "run the dense-grid residual oracle");

    auto* spin_cmd = app.add_subcommand("spin", "spin data of an eigentope");
    spin_cmd->add_option("word", word_text)->required();
    spin_cmd->add_option("--evec", evec_text, "fixed point (refined automatically)");

    auto* scan = app.add_subcommand("scan", "systematic word scan into the catalog");
    scan->add_option("--context", ctx, "e3|e4");
    scan->add_option("--max-len", g.max_len);
    scan->add_flag("--no-prune", no_prune, "scan every word, no fingerprint pruning");

    auto* tessellate = app.add_subcommand("tessellate", "star transform / honeycomb statistics");
    tessellate->add_option("symbol", symbol_text)->required();

    auto* tables = app.add_subcommand("tables", "regenerate the reference tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (convert->parsed()) return cmd_convert(g, symbol_text);
        if (transform->parsed()) return cmd_transform(g, word_text, symbol_text, trace);
        if (matrix->parsed()) return cmd_matrix(g, word_text, symbol_text);
        if (order->parsed()) return cmd_order(g, word_text, ctx, samples);
        if (relations->parsed()) return cmd_relations(g, suite, samples);
        if (eigen->parsed()) return cmd_eigen(g, word_text, ctx, oracle);
        if (spin_cmd->parsed()) return cmd_spin(g, word_text, evec_text);
        if (scan->parsed()) return cmd_scan(g, ctx, no_prune);
        if (tessellate->parsed()) return cmd_tessellate(g, symbol_text);
        if (tables->parsed()) return cmd_tables(g);
    } catch (const CLI::ValidationError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const polytope::ParseError& ex) {
        std::cerr << "usage error: " << ex.what() << " (position " << ex.position << ")\n";
        return kExitUsage;
    } catch (const polytope::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitComputational;
    }
    return kExitUsage;
}
