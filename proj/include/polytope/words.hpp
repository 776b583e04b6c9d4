#pragma once

// Words over the generator alphabets, their action on E-symbols, the chained
// frame-matrix product, period detection, relation-suite verification and
// isotropy membership. Compositions read left to right: the first letter of
// a word acts first. Uppercase letters are generators, lowercase their
// inverses; a trailing decimal repeats the preceding letter.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polytope/error.hpp"
#include "polytope/generators3.hpp"
#include "polytope/generators4.hpp"
#include "polytope/symbols.hpp"

namespace polytope {

enum class Context { E3, E4, P4 };

inline std::string to_string(Context c) {
    switch (c) {
        case Context::E3: return "E3";
        case Context::E4: return "E4";
        case Context::P4: return "P4";
    }
    return "E4";
}

struct Word {
    Context context = Context::E4;
    std::vector<Letter> letters;

    [[nodiscard]] std::size_t size() const { return letters.size(); }
    [[nodiscard]] bool empty() const { return letters.empty(); }
};

inline char max_letter(Context c) { return c == Context::E3 ? 'D' : 'H'; }

/// Parse a word. "DCBA" is four generators, "aEGAdg" mixes inverses in,
/// "ABE2F" repeats E twice. "1" denotes the identity (empty) word.
inline Word parse_word(std::string_view text, Context context) {
    if (text.empty()) throw ParseError("empty word text", 0);
    Word w;
    w.context = context;
    if (text == "1") return w;
    const char hi = max_letter(context);
    for (std::size_t i = 0; i < text.size();) {
        const char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t n = 0;
            const std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                n = n * 10 + static_cast<std::size_t>(text[i] - '0');
                ++i;
            }
            if (w.letters.empty()) throw ParseError("repeat count with no preceding letter", start);
            if (n == 0) throw ParseError("repeat count must be positive", start);
            const Letter last = w.letters.back();
            for (std::size_t k = 1; k < n; ++k) w.letters.push_back(last);
            continue;
        }
        const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (up < 'A' || up > hi) {
            throw ParseError("letter '" + std::string(1, ch) + "' is not in the " +
                                 to_string(context) + " alphabet",
                             i);
        }
        w.letters.push_back({up, std::islower(static_cast<unsigned char>(ch)) != 0});
        ++i;
    }
    return w;
}

/// Canonical text of a word; the identity renders as "1".
inline std::string render(const Word& w) {
    if (w.letters.empty()) return "1";
    std::string out;
    out.reserve(w.letters.size());
    for (const Letter& l : w.letters) {
        out.push_back(l.inverted ? static_cast<char>(std::tolower(static_cast<unsigned char>(l.symbol)))
                                 : l.symbol);
    }
    return out;
}

/// w1 followed by w2.
inline Word concat(const Word& w1, const Word& w2) {
    Word out = w1;
    out.letters.insert(out.letters.end(), w2.letters.begin(), w2.letters.end());
    return out;
}

inline Word repeat(const Word& w, int n) {
    Word out;
    out.context = w.context;
    out.letters.reserve(w.letters.size() * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

/// Inverse word: reversed letters with flipped inversion flags.
inline Word inverse(const Word& w) {
    Word out;
    out.context = w.context;
    out.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back({it->symbol, !it->inverted});
    return out;
}

inline ESymbol3 apply_word(const Word& w, ESymbol3 e, DenominatorWatch* watch = nullptr) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) e = apply3(w.letters[i], e, i, watch);
    return e;
}

inline ESymbol4 apply_word(const Word& w, ESymbol4 e, DenominatorWatch* watch = nullptr) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) e = apply4(w.letters[i], e, i, watch);
    return e;
}

namespace detail {

template <typename T>
std::array<T, 2> apply_word_t(const Word& w, std::array<T, 2> e, DenominatorWatch* watch) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const Letter& l = w.letters[i];
        e = l.inverted ? apply3_inverse_t(l.symbol, e, i, watch)
                       : apply3_forward_t(l.symbol, e, i, watch);
    }
    return e;
}

template <typename T>
std::array<T, 3> apply_word_t(const Word& w, std::array<T, 3> e, DenominatorWatch* watch) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const Letter& l = w.letters[i];
        e = l.inverted ? apply4_inverse_t(l.symbol, e, i, watch)
                       : apply4_forward_t(l.symbol, e, i, watch);
    }
    return e;
}

template <typename T>
Mat4T<T> word_matrix_t(const Word& w, std::array<T, 3> e, DenominatorWatch* watch) {
    Mat4T<T> x = Mat4T<T>::Identity();
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const Letter& l = w.letters[i];
        if (l.inverted) {
            e = apply4_inverse_t(l.symbol, e, i, watch);
            x = matrix4_inverse_t(l.symbol, e, i, watch) * x;
        } else {
            x = matrix4_forward_t(l.symbol, e, i, watch) * x;
            e = apply4_forward_t(l.symbol, e, i, watch);
        }
    }
    return x;
}

}  // namespace detail

/// Chained frame matrix X = W_k(e_{k-1}) ... W_1(e_0); each step is evaluated
/// at the E-symbol reached so far, later steps multiplying on the left. For
/// an inverse letter the step matrix is the closed-form inverse evaluated at
/// the E-preimage.
inline Mat4 word_matrix(const Word& w, ESymbol4 e, DenominatorWatch* watch = nullptr,
                        ESymbol4* end_point = nullptr) {
    Mat4 x = Mat4::Identity();
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const Letter& l = w.letters[i];
        if (l.inverted) {
            e = apply4_inverse(l.symbol, e, i, watch);
            x = matrix4_inverse(l.symbol, e, i, watch) * x;
        } else {
            x = matrix4_forward(l.symbol, e, i, watch) * x;
            e = apply4_forward(l.symbol, e, i, watch);
        }
    }
    if (end_point != nullptr) *end_point = e;
    return x;
}

// ---------------------------------------------------------------------------
// Generic sampling
// ---------------------------------------------------------------------------

struct SampleConfig {
    std::uint64_t seed = 20240401;
    double low = 0.05;
    double high = 0.95;
    double singular_margin = 1e-3;  // discard samples passing this close to a pole
    double tolerance = kDefaultTol;
};

namespace detail {

inline ESymbol3 random_e3(std::mt19937_64& rng, const SampleConfig& cfg) {
    std::uniform_real_distribution<double> u(cfg.low, cfg.high);
    return {u(rng), u(rng)};
}

inline ESymbol4 random_e4(std::mt19937_64& rng, const SampleConfig& cfg) {
    std::uniform_real_distribution<double> u(cfg.low, cfg.high);
    return {u(rng), u(rng), u(rng)};
}

inline double residual(const ESymbol3& a, const ESymbol3& b) {
    return std::max(std::abs(a.epsilon - b.epsilon), std::abs(a.delta - b.delta));
}

inline double residual(const ESymbol4& a, const ESymbol4& b) {
    return std::max({std::abs(a.epsilon - b.epsilon), std::abs(a.delta - b.delta),
                     std::abs(a.eta - b.eta)});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Periods
// ---------------------------------------------------------------------------

/// Least q <= max_q with word^q = identity on every sampled generic point;
/// nullopt when none. Samples that pass within the singular margin of a pole
/// are skipped and counted.
inline std::optional<int> period(const Word& w, int samples, int max_q,
                                 const SampleConfig& cfg = {}, int* singular_count = nullptr) {
    std::mt19937_64 rng(cfg.seed);
    int singular = 0;
    int tested = 0;
    long long common = 0;  // running lcm of per-sample first returns
    const int budget = samples * 4;  // resample allowance for singular points
    for (int attempt = 0; tested < samples && attempt < budget; ++attempt) {
        std::optional<int> q_here;
        DenominatorWatch watch;
        try {
            if (w.context == Context::E3) {
                const ESymbol3 start = detail::random_e3(rng, cfg);
                ESymbol3 v = start;
                for (int q = 1; q <= max_q; ++q) {
                    v = apply_word(w, v, &watch);
                    if (detail::residual(v, start) < cfg.tolerance) {
                        q_here = q;
                        break;
                    }
                }
            } else {
                const ESymbol4 start = detail::random_e4(rng, cfg);
                ESymbol4 v = start;
                for (int q = 1; q <= max_q; ++q) {
                    v = apply_word(w, v, &watch);
                    if (detail::residual(v, start) < cfg.tolerance) {
                        q_here = q;
                        break;
                    }
                }
            }
        } catch (const SingularTransform&) {
            ++singular;
            continue;
        }
        if (watch.min_abs < cfg.singular_margin) {
            ++singular;
            continue;
        }
        ++tested;
        if (!q_here.has_value()) {
            if (singular_count != nullptr) *singular_count = singular;
            return std::nullopt;
        }
        common = common == 0 ? *q_here : std::lcm(common, static_cast<long long>(*q_here));
        if (common > max_q) {
            if (singular_count != nullptr) *singular_count = singular;
            return std::nullopt;
        }
    }
    if (singular_count != nullptr) *singular_count = singular;
    if (tested == 0 || common == 0) return std::nullopt;
    return static_cast<int>(common);
}

// ---------------------------------------------------------------------------
// Relation suites
// ---------------------------------------------------------------------------

struct Relation {
    Word word;
    int exponent = 1;
};

enum class Suite { RRP3, RRP4, ARP4 };

inline std::string suite_filename(Suite s) {
    switch (s) {
        case Suite::RRP3: return "relations_rrp3.txt";
        case Suite::RRP4: return "relations_rrp4.txt";
        case Suite::ARP4: return "relations_arp4.txt";
    }
    return {};
}

inline Context suite_context(Suite s) {
    switch (s) {
        case Suite::RRP3: return Context::E3;
        case Suite::RRP4: return Context::E4;
        case Suite::ARP4: return Context::P4;
    }
    return Context::E4;
}

/// Load relations from a data file: one "word exponent" pair per line,
/// '#' starts a comment.
inline std::vector<Relation> load_relations(const std::filesystem::path& file, Context context) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open relation file " + file.string());
    std::vector<Relation> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string wtext;
        int expn = 1;
        if (!(ls >> wtext)) continue;
        ls >> expn;
        out.push_back({parse_word(wtext, context), expn});
    }
    return out;
}

inline std::vector<Relation> suite_relations(Suite s, const std::filesystem::path& data_dir) {
    return load_relations(data_dir / suite_filename(s), suite_context(s));
}

struct VerificationReport {
    std::string word_text;
    int exponent = 1;
    int samples_tested = 0;
    int singular_samples = 0;  // orbits that hit an exact singularity
    int margin_skipped = 0;    // draws discarded for passing within the pole margin
    double max_residual = 0.0;
    bool pass = false;
};

/// Check one relation word^exponent = identity on random generic points.
/// E-context relations compare the E-vector with its image; P4 relations
/// compare the chained frame matrix with the identity matrix. The chains run
/// in extended precision: the deepest relations multiply out thirty-odd
/// rational steps, which costs about eight decimal digits in plain double.
inline VerificationReport verify_relation(const Relation& rel, int samples,
                                          const SampleConfig& cfg) {
    VerificationReport rep;
    rep.word_text = render(rel.word);
    rep.exponent = rel.exponent;
    const Word full = repeat(rel.word, rel.exponent);
    std::mt19937_64 rng(cfg.seed);
    const int budget = samples * 20;
    for (int attempt = 0; rep.samples_tested < samples && attempt < budget; ++attempt) {
        DenominatorWatch watch;
        try {
            long double res = 0.0L;
            if (rel.word.context == Context::E3) {
                const ESymbol3 start = detail::random_e3(rng, cfg);
                const std::array<long double, 2> s{start.epsilon, start.delta};
                const auto img = detail::apply_word_t(full, s, &watch);
                res = std::max(std::abs(img[0] - s[0]), std::abs(img[1] - s[1]));
            } else if (rel.word.context == Context::E4) {
                const ESymbol4 start = detail::random_e4(rng, cfg);
                const std::array<long double, 3> s{start.epsilon, start.delta, start.eta};
                const auto img = detail::apply_word_t(full, s, &watch);
                res = std::max({std::abs(img[0] - s[0]), std::abs(img[1] - s[1]),
                                std::abs(img[2] - s[2])});
            } else {
                const ESymbol4 start = detail::random_e4(rng, cfg);
                const std::array<long double, 3> s{start.epsilon, start.delta, start.eta};
                const auto x = detail::word_matrix_t(full, s, &watch);
                res = (x - detail::Mat4T<long double>::Identity()).cwiseAbs().maxCoeff();
            }
            if (watch.min_abs < cfg.singular_margin) {
                // not a generic point: the orbit grazes a pole; redraw
                ++rep.margin_skipped;
                continue;
            }
            rep.max_residual = std::max(rep.max_residual, static_cast<double>(res));
            ++rep.samples_tested;
        } catch (const SingularTransform&) {
            ++rep.singular_samples;
        }
    }
    rep.pass = rep.samples_tested == samples && rep.max_residual < cfg.tolerance &&
               rep.singular_samples * 10 < rep.samples_tested + rep.singular_samples;
    return rep;
}

inline std::vector<VerificationReport> verify_suite(Suite s, const std::filesystem::path& data_dir,
                                                    int samples = 100,
                                                    const SampleConfig& cfg = {}) {
    std::vector<VerificationReport> out;
    for (const Relation& rel : suite_relations(s, data_dir)) {
        SampleConfig c = cfg;
        c.seed = cfg.seed + out.size();  // decorrelate relations, keep determinism
        out.push_back(verify_relation(rel, samples, c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Isotropy
// ---------------------------------------------------------------------------

struct IsotropyResult {
    bool member = false;
    bool singular = false;
};

inline IsotropyResult is_isotropy_member(const Word& w, const ESymbol3& e,
                                         double tol = kDefaultTol) {
    try {
        return {detail::residual(apply_word(w, e), e) < tol, false};
    } catch (const SingularTransform&) {
        return {false, true};
    }
}

inline IsotropyResult is_isotropy_member(const Word& w, const ESymbol4& e,
                                         double tol = kDefaultTol) {
    try {
        return {detail::residual(apply_word(w, e), e) < tol, false};
    } catch (const SingularTransform&) {
        return {false, true};
    }
}

// ---------------------------------------------------------------------------
// Subgroup enumeration by evaluation fingerprints
// ---------------------------------------------------------------------------

// Two rational maps agreeing at 8 generic points of the symbol space are
// taken to be equal. This is a heuristic identity test, not a proof.
struct FingerprintConfig {
    std::uint64_t seed = 98765;
    int points = 8;
    double round_scale = 1e8;  // fingerprints compare after rounding to 1/round_scale
    int element_cap = 512;
};

namespace detail {

template <typename Sym>
std::optional<std::vector<std::int64_t>> fingerprint(const Word& w, const std::vector<Sym>& pts,
                                                     double round_scale) {
    std::vector<std::int64_t> out;
    out.reserve(pts.size() * 3);
    for (const Sym& p : pts) {
        try {
            const Sym img = apply_word(w, p);
            if constexpr (std::is_same_v<Sym, ESymbol3>) {
                out.push_back(std::llround(img.epsilon * round_scale));
                out.push_back(std::llround(img.delta * round_scale));
            } else {
                out.push_back(std::llround(img.epsilon * round_scale));
                out.push_back(std::llround(img.delta * round_scale));
                out.push_back(std::llround(img.eta * round_scale));
            }
        } catch (const SingularTransform&) {
            return std::nullopt;
        }
    }
    return out;
}

}  // namespace detail

/// Breadth-first closure of the subgroup generated by the given words, with
/// element identity decided by evaluation fingerprints. Returns the element
/// count, or nullopt if the cap was exceeded (subgroup too large or infinite).
inline std::optional<int> subgroup_order(const std::vector<Word>& generators,
                                         const FingerprintConfig& cfg = {}) {
    if (generators.empty()) return 1;
    const Context context = generators.front().context;

    for (int retry = 0; retry < 5; ++retry) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(retry) * 7919);
        std::uniform_real_distribution<double> u(0.1, 0.9);
        std::vector<ESymbol3> pts3;
        std::vector<ESymbol4> pts4;
        for (int i = 0; i < cfg.points; ++i) {
            if (context == Context::E3)
                pts3.push_back({u(rng), u(rng)});
            else
                pts4.push_back({u(rng), u(rng), u(rng)});
        }

        auto fp = [&](const Word& w) -> std::optional<std::vector<std::int64_t>> {
            if (context == Context::E3) return detail::fingerprint(w, pts3, cfg.round_scale);
            return detail::fingerprint(w, pts4, cfg.round_scale);
        };

        Word identity;
        identity.context = context;
        const auto id_fp = fp(identity);
        if (!id_fp.has_value()) continue;

        std::set<std::vector<std::int64_t>> seen{*id_fp};
        std::vector<Word> frontier{identity};
        bool singular = false;
        while (!frontier.empty() && !singular) {
            std::vector<Word> next;
            for (const Word& w : frontier) {
                for (const Word& g : generators) {
                    const Word w2 = concat(w, g);
                    const auto key = fp(w2);
                    if (!key.has_value()) {
                        singular = true;
                        break;
                    }
                    if (seen.insert(*key).second) {
                        next.push_back(w2);
                        if (static_cast<int>(seen.size()) > cfg.element_cap) return std::nullopt;
                    }
                }
                if (singular) break;
            }
            frontier = std::move(next);
        }
        if (!singular) return static_cast<int>(seen.size());
    }
    throw Error("subgroup_order: all fingerprint seeds hit singular orbits");
}

}  // namespace polytope
