#pragma once

// Eigentope discovery and analysis: multi-start Newton solving of
// apply_word(w, x) = x, a brute-force grid oracle, the sixfold vertex-map
// scale, spin data (q, lambda_q, J) of self-reproducing polytopes, the
// conformal metric check, and systematic word scans.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polytope/detail/parallel.hpp"
#include "polytope/error.hpp"
#include "polytope/metric.hpp"
#include "polytope/symbols.hpp"
#include "polytope/words.hpp"

namespace polytope {

// ---------------------------------------------------------------------------
// Fixed points
// ---------------------------------------------------------------------------

struct SolverConfig {
    double box_min = -0.5;
    double box_max = 2.0;
    double grid_step = 0.05;
    int newton_max_iter = 50;
    double fd_step = 1e-7;
    double newton_tol = 1e-13;
    double dedup_radius = 1e-6;
    double residual_tol = 1e-10;
    double escape_radius = 50.0;
    double isolated_sv_threshold = 1e-6;  // Jacobian of w(x)-x singular below this: on-curve root
    bool seeds_from_minima_only = false;  // scan mode: Newton only from low-residual seeds
    std::size_t max_seeds = 0;            // 0 = every grid point; else stride-subsample
    unsigned threads = 0;
};

struct FixedPointResult {
    std::vector<double> evec;    // 2 (E3) or 3 (E4) components
    double residual = kInfinity;
    bool converged = false;
    std::vector<double> seed;    // grid point the Newton run started from
    double jacobian_min_sv = 0.0;  // smallest singular value of d(w(x)-x)/dx at the root
    bool isolated = true;          // false: the root lies on a positive-dimensional fixed set
};

namespace detail {

inline int context_dim(Context c) { return c == Context::E3 ? 2 : 3; }

inline std::optional<std::vector<double>> word_image(const Word& w,
                                                     const std::vector<double>& x) {
    try {
        if (w.context == Context::E3) {
            const ESymbol3 img = apply_word(w, ESymbol3{x[0], x[1]});
            return std::vector<double>{img.epsilon, img.delta};
        }
        const ESymbol4 img = apply_word(w, ESymbol4{x[0], x[1], x[2]});
        return std::vector<double>{img.epsilon, img.delta, img.eta};
    } catch (const SingularTransform&) {
        return std::nullopt;
    }
}

inline std::optional<double> fixed_residual(const Word& w, const std::vector<double>& x) {
    const auto img = word_image(w, x);
    if (!img.has_value()) return std::nullopt;
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs((*img)[i] - x[i]));
    if (!std::isfinite(r)) return std::nullopt;
    return r;
}

/// Damped Newton on F(x) = w(x) - x with a finite-difference Jacobian.
inline std::optional<std::vector<double>> newton_refine(const Word& w, std::vector<double> x,
                                                        const SolverConfig& cfg) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd jac(n, n);
    Eigen::VectorXd fvec(n);
    for (int iter = 0; iter < cfg.newton_max_iter; ++iter) {
        const auto img = word_image(w, x);
        if (!img.has_value()) return std::nullopt;
        double fmax = 0.0;
        for (int i = 0; i < n; ++i) {
            fvec(i) = (*img)[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)];
            fmax = std::max(fmax, std::abs(fvec(i)));
        }
        if (!std::isfinite(fmax)) return std::nullopt;
        if (fmax < cfg.newton_tol) return x;
        for (int j = 0; j < n; ++j) {
            std::vector<double> xp = x;
            xp[static_cast<std::size_t>(j)] += cfg.fd_step;
            const auto imgp = word_image(w, xp);
            if (!imgp.has_value()) return std::nullopt;
            for (int i = 0; i < n; ++i) {
                jac(i, j) = ((*imgp)[static_cast<std::size_t>(i)] -
                             xp[static_cast<std::size_t>(i)] - fvec(i)) /
                            cfg.fd_step;
            }
        }
        const Eigen::VectorXd dx = jac.fullPivLu().solve(-fvec);
        if (!dx.allFinite()) return std::nullopt;
        double xmax = 0.0;
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] += dx(i);
            xmax = std::max(xmax, std::abs(x[static_cast<std::size_t>(i)]));
        }
        if (xmax > cfg.escape_radius) return std::nullopt;
    }
    return std::nullopt;
}

inline std::vector<std::vector<double>> grid_points(int dim, const SolverConfig& cfg) {
    const int steps = static_cast<int>(std::floor((cfg.box_max - cfg.box_min) / cfg.grid_step + 0.5));
    std::vector<std::vector<double>> pts;
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    while (true) {
        std::vector<double> p(static_cast<std::size_t>(dim));
        for (int k = 0; k < dim; ++k)
            p[static_cast<std::size_t>(k)] = cfg.box_min + cfg.grid_step * idx[static_cast<std::size_t>(k)];
        pts.push_back(std::move(p));
        int k = 0;
        while (k < dim) {
            if (++idx[static_cast<std::size_t>(k)] <= steps) break;
            idx[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == dim) break;
    }
    return pts;
}

/// Smallest singular value of the finite-difference Jacobian of w(x) - x.
inline std::optional<double> jacobian_min_sv(const Word& w, const std::vector<double>& x,
                                             double fd_step) {
    const int n = static_cast<int>(x.size());
    const auto img = word_image(w, x);
    if (!img.has_value()) return std::nullopt;
    Eigen::MatrixXd jac(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> xp = x;
        xp[static_cast<std::size_t>(j)] += fd_step;
        const auto imgp = word_image(w, xp);
        if (!imgp.has_value()) return std::nullopt;
        for (int i = 0; i < n; ++i) {
            jac(i, j) = ((*imgp)[static_cast<std::size_t>(i)] - xp[static_cast<std::size_t>(i)] -
                         ((*img)[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)])) /
                        fd_step;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    return svd.singularValues()(n - 1);
}

}  // namespace detail

/// Multi-start Newton search for fixed points of a word map. Seeds come from
/// a coarse grid over the search box; converged roots are deduplicated and
/// re-verified by direct application.
inline std::vector<FixedPointResult> find_fixed_points(const Word& w,
                                                       const SolverConfig& cfg = {}) {
    const int dim = detail::context_dim(w.context);
    auto seeds = detail::grid_points(dim, cfg);
    if (cfg.max_seeds != 0 && seeds.size() > cfg.max_seeds) {
        const std::size_t stride = (seeds.size() + cfg.max_seeds - 1) / cfg.max_seeds;
        std::vector<std::vector<double>> kept;
        for (std::size_t i = 0; i < seeds.size(); i += stride) kept.push_back(std::move(seeds[i]));
        seeds = std::move(kept);
    }

    std::vector<std::optional<std::vector<double>>> refined(seeds.size());
    detail::parallel_for(
        seeds.size(),
        [&](std::size_t i) {
            if (cfg.seeds_from_minima_only) {
                const auto res = detail::fixed_residual(w, seeds[i]);
                if (!res.has_value() || *res > 0.25) return;
            }
            refined[i] = detail::newton_refine(w, seeds[i], cfg);
        },
        cfg.threads);

    std::vector<FixedPointResult> roots;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (!refined[i].has_value()) continue;
        const std::vector<double>& x = *refined[i];
        bool inside = true;
        for (double c : x)
            if (c < cfg.box_min - cfg.grid_step || c > cfg.box_max + cfg.grid_step) inside = false;
        if (!inside) continue;
        const auto res = detail::fixed_residual(w, x);
        if (!res.has_value() || *res > cfg.residual_tol) continue;
        bool duplicate = false;
        for (const FixedPointResult& r : roots) {
            double d = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k)
                d = std::max(d, std::abs(r.evec[k] - x[k]));
            if (d < cfg.dedup_radius) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        FixedPointResult root{x, *res, true, seeds[i], 0.0, true};
        const auto sv = detail::jacobian_min_sv(w, x, cfg.fd_step);
        root.jacobian_min_sv = sv.value_or(0.0);
        root.isolated = sv.has_value() && *sv > cfg.isolated_sv_threshold;
        roots.push_back(std::move(root));
    }
    std::sort(roots.begin(), roots.end(), [](const FixedPointResult& a, const FixedPointResult& b) {
        return a.evec < b.evec;
    });
    return roots;
}

/// Local minima of the fixed-point residual on a dense grid. Independent of
/// the Newton path; used to confirm the solver missed nothing. A minimum is a
/// grid point whose residual is below `threshold` and not larger than any
/// existing neighbor's (full Moore neighborhood).
inline std::vector<std::vector<double>> grid_residual_minima(const Word& w, double step,
                                                             double threshold,
                                                             const SolverConfig& cfg = {}) {
    const int dim = detail::context_dim(w.context);
    const int n = static_cast<int>(std::floor((cfg.box_max - cfg.box_min) / step + 0.5)) + 1;

    auto coord = [&](int i) { return cfg.box_min + step * i; };
    std::vector<std::vector<double>> minima;

    if (dim == 2) {
        std::vector<double> grid(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kInfinity);
        detail::parallel_for(
            static_cast<std::size_t>(n),
            [&](std::size_t ix) {
                for (int iy = 0; iy < n; ++iy) {
                    const auto r = detail::fixed_residual(w, {coord(static_cast<int>(ix)), coord(iy)});
                    grid[ix * static_cast<std::size_t>(n) + static_cast<std::size_t>(iy)] =
                        r.value_or(kInfinity);
                }
            },
            cfg.threads);
        auto at = [&](int x, int y) { return grid[static_cast<std::size_t>(x) * n + y]; };
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const double v = at(x, y);
                if (!(v < threshold)) continue;
                bool ismin = true;
                for (int dx = -1; dx <= 1 && ismin; ++dx)
                    for (int dy = -1; dy <= 1 && ismin; ++dy) {
                        const int xx = x + dx, yy = y + dy;
                        if (xx < 0 || yy < 0 || xx >= n || yy >= n || (dx == 0 && dy == 0)) continue;
                        if (at(xx, yy) < v) ismin = false;
                    }
                if (ismin) minima.push_back({coord(x), coord(y)});
            }
        return minima;
    }

    // dim == 3: slab-wise evaluation keeps three z-slices in memory.
    const std::size_t slab = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::array<std::vector<double>, 3> slices{std::vector<double>(slab, kInfinity),
                                              std::vector<double>(slab, kInfinity),
                                              std::vector<double>(slab, kInfinity)};
    auto fill = [&](int iz, std::vector<double>& out) {
        detail::parallel_for(
            static_cast<std::size_t>(n),
            [&](std::size_t ix) {
                for (int iy = 0; iy < n; ++iy) {
                    const auto r = detail::fixed_residual(
                        w, {coord(static_cast<int>(ix)), coord(iy), coord(iz)});
                    out[ix * static_cast<std::size_t>(n) + static_cast<std::size_t>(iy)] =
                        r.value_or(kInfinity);
                }
            },
            cfg.threads);
    };
    fill(0, slices[1]);  // slices hold z-1, z, z+1; start with z = 0 in the middle
    if (n > 1) fill(1, slices[2]);
    for (int z = 0; z < n; ++z) {
        auto at = [&](int which, int x, int y) {
            return slices[static_cast<std::size_t>(which)]
                         [static_cast<std::size_t>(x) * n + y];
        };
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const double v = at(1, x, y);
                if (!(v < threshold)) continue;
                bool ismin = true;
                for (int dz = -1; dz <= 1 && ismin; ++dz) {
                    if (z + dz < 0 || z + dz >= n) continue;
                    for (int dx = -1; dx <= 1 && ismin; ++dx)
                        for (int dy = -1; dy <= 1 && ismin; ++dy) {
                            const int xx = x + dx, yy = y + dy;
                            if (xx < 0 || yy < 0 || xx >= n || yy >= n) continue;
                            if (dx == 0 && dy == 0 && dz == 0) continue;
                            if (at(1 + dz, xx, yy) < v) ismin = false;
                        }
                }
                if (ismin) minima.push_back({coord(x), coord(y), coord(z)});
            }
        // advance slices
        if (z + 1 < n) {
            slices[0].swap(slices[1]);
            slices[1].swap(slices[2]);
            if (z + 2 < n)
                fill(z + 2, slices[2]);
            else
                std::fill(slices[2].begin(), slices[2].end(), kInfinity);
        }
    }
    return minima;
}

// ---------------------------------------------------------------------------
// Sixfold vertex-reflection scale
// ---------------------------------------------------------------------------

/// Scalar lambda with (vertex reflection)^6 = lambda * identity on the frame:
/// lambda = -(1-e-d)(1-d-h) / (e d h (1-e-d-h+e h)).
inline double lambda_sixfold_vertex(const ESymbol4& v) {
    const double e = v.epsilon, d = v.delta, h = v.eta;
    const double den = e * d * h * (1.0 - e - d - h + e * h);
    if (den == 0.0)
        throw SingularTransform("sixfold scale: denominator e*d*h*(1-e-d-h+e*h) vanished");
    return -(1.0 - e - d) * (1.0 - d - h) / den;
}

// ---------------------------------------------------------------------------
// Spin
// ---------------------------------------------------------------------------

struct SpinConfig {
    int max_q = 32;
    double proportionality_tol = 1e-4;   // relative, on off-diagonal and diagonal spread
    double singular_den_threshold = 1e-6;  // below this, the chain is re-evaluated by offsets
    double offset = 1e-5;                // offset scale for the extrapolated evaluation
    double fixed_point_tol = 1e-8;       // evec must satisfy |w(evec)-evec| below this
};

struct SpinResult {
    int q = 0;
    double lambda_q = 0.0;      // X^q = lambda_q * identity
    double spin_j = 0.0;        // (q - 1) / 2
    double metric_scale = 0.0;  // mu with X G X^T = mu G
    double prop_residual = 0.0;
    double ortho_residual = 0.0;  // max |U G U^T - G|, absolute
    double det_residual = 0.0;    // | |lambda|^(4/q) - |det X| | / |det X|
    bool even_q_negative_lambda = false;
    bool extrapolated = false;  // chain passed a singular surface; X was extrapolated
};

namespace detail {

/// Evaluate the word matrix at evec. Orbits of some eigentopes pass exactly
/// through a singular surface of a single step while the full product stays
/// finite; there a direct double-precision evaluation is garbage, so the
/// matrix is recovered by quadratic Richardson extrapolation from offset
/// points, accurate to ~1e-10.
inline Mat4 robust_word_matrix(const Word& w, const ESymbol4& evec, const SpinConfig& cfg,
                               bool* extrapolated) {
    DenominatorWatch watch;
    const Mat4 direct = word_matrix(w, evec, &watch);
    if (watch.min_abs >= cfg.singular_den_threshold) {
        if (extrapolated != nullptr) *extrapolated = false;
        return direct;
    }
    if (extrapolated != nullptr) *extrapolated = true;
    // fixed generic direction; components chosen with no rational relation
    const double nx = 1.0, ny = 0.7548776662466927, nz = 0.5698402909980532;
    const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
    auto shifted = [&](double t) {
        return ESymbol4{evec.epsilon + t * nx / nn, evec.delta + t * ny / nn,
                        evec.eta + t * nz / nn};
    };
    const double t = cfg.offset;
    const Mat4 x1 = word_matrix(w, shifted(t));
    const Mat4 x2 = word_matrix(w, shifted(t / 2));
    const Mat4 x4 = word_matrix(w, shifted(t / 4));
    return (8.0 * x4 - 6.0 * x2 + x1) / 3.0;
}

inline Mat4 gram_of(const ESymbol4& e) { return gram_natural(h_to_rho(e_to_h(e), 1.0)); }

/// Proportionality of P to the identity: relative off-diagonal magnitude and
/// relative diagonal spread, reported as their max.
inline double identity_proportionality_residual(const Mat4& p) {
    const double scale = p.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || !std::isfinite(scale)) return kInfinity;
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) off = std::max(off, std::abs(p(i, j)));
    const double mean = p.trace() / 4.0;
    double spread = 0.0;
    for (int i = 0; i < 4; ++i) spread = std::max(spread, std::abs(p(i, i) - mean));
    return std::max(off / scale, std::abs(mean) > 0 ? spread / std::abs(mean) : kInfinity);
}

}  // namespace detail

/// Spin data of an eigentope: the least q <= max_q with X^q proportional to
/// the identity, the scalar lambda_q, and J = (q-1)/2, together with the
/// pseudo-orthogonality and determinant residuals of U = lambda_q^{-1/q} X.
/// Throws NoFiniteQ when no power is proportional within max_q.
inline SpinResult spin(const Word& w, const ESymbol4& evec, const SpinConfig& cfg = {}) {
    {
        const auto res = detail::fixed_residual(w, {evec.epsilon, evec.delta, evec.eta});
        if (!res.has_value() || *res > cfg.fixed_point_tol) {
            throw Error("spin: the supplied E-vector is not a fixed point of the word (residual " +
                        std::to_string(res.value_or(kInfinity)) + ")");
        }
    }
    SpinResult out;
    const Mat4 x = detail::robust_word_matrix(w, evec, cfg, &out.extrapolated);
    const Mat4 g = detail::gram_of(evec);
    const double gscale = g.cwiseAbs().maxCoeff();

    // conformal scale, least squares fit of X G X^T = mu G
    const Mat4 xgx = x * g * x.transpose();
    out.metric_scale = xgx.cwiseProduct(g).sum() / g.cwiseProduct(g).sum();

    Mat4 p = Mat4::Identity();
    for (int q = 1; q <= cfg.max_q; ++q) {
        p = x * p;
        const double res = detail::identity_proportionality_residual(p);
        if (res < cfg.proportionality_tol) {
            out.q = q;
            out.prop_residual = res;
            out.lambda_q = p.trace() / 4.0;
            out.spin_j = (q - 1) / 2.0;
            out.even_q_negative_lambda = (q % 2 == 0) && out.lambda_q < 0.0;
            const double root = std::pow(std::abs(out.lambda_q), 1.0 / q);
            const double sgn = (out.lambda_q < 0.0 && q % 2 == 1) ? -1.0 : 1.0;
            const Mat4 u = x / (sgn * root);
            out.ortho_residual = (u * g * u.transpose() - g).cwiseAbs().maxCoeff();
            const double adet = std::abs(x.determinant());
            out.det_residual = std::abs(std::pow(std::abs(out.lambda_q), 4.0 / q) - adet) /
                               std::max(adet, 1e-300);
            // normalized residual against the metric scale for reporting
            out.ortho_residual /= std::max(gscale, 1e-300);
            return out;
        }
    }
    throw NoFiniteQ("spin: no power of the frame matrix up to q = " + std::to_string(cfg.max_q) +
                    " is proportional to the identity");
}

/// Non-throwing variant used by the scanner.
inline std::optional<SpinResult> try_spin(const Word& w, const ESymbol4& evec,
                                          const SpinConfig& cfg = {}) {
    try {
        return spin(w, evec, cfg);
    } catch (const Error&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Conformal check
// ---------------------------------------------------------------------------

struct ConformalReport {
    double mu = 0.0;                   // X G X^T = mu G
    double proportionality_residual = 0.0;  // max |X G X^T - mu G| / max |G|
    double det_relation_residual = 0.0;     // |mu^2 - |det X|| / |det X|
};

/// Verify the conformal transformation law of the metric under the frame map
/// of a word at one of its fixed points.
inline ConformalReport conformal_check(const Word& w, const ESymbol4& evec,
                                       const SpinConfig& cfg = {}) {
    ConformalReport rep;
    bool extrapolated = false;
    const Mat4 x = detail::robust_word_matrix(w, evec, cfg, &extrapolated);
    const Mat4 g = detail::gram_of(evec);
    const Mat4 xgx = x * g * x.transpose();
    rep.mu = xgx.cwiseProduct(g).sum() / g.cwiseProduct(g).sum();
    rep.proportionality_residual =
        (xgx - rep.mu * g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff();
    const double adet = std::abs(x.determinant());
    rep.det_relation_residual = std::abs(rep.mu * rep.mu - adet) / std::max(adet, 1e-300);
    return rep;
}

// ---------------------------------------------------------------------------
// Systematic scans
// ---------------------------------------------------------------------------

struct ScanConfig {
    int max_len = 3;
    SolverConfig solver;        // solver.seeds_from_minima_only is forced on
    SpinConfig spin;
    int period_samples = 3;
    int period_max_q = 24;
    SampleConfig samples;
    bool prune = true;          // skip words equal to earlier ones by fingerprint
    unsigned threads = 0;
    double f_five_tol = 1e-6;   // flag f-components this close to 5
};

struct EigentopeRecord {
    std::string word;
    std::vector<double> evec;
    int q = 0;
    double lambda_q = 0.0;
    double spin_j = 0.0;
    std::string signature;
    double fp_residual = 0.0;
    double ortho_residual = 0.0;
    double det_residual = 0.0;
    std::vector<double> f_symbol;  // empty when some component is not real
};

struct ScanSummary {
    std::vector<EigentopeRecord> records;  // isolated fixed points only
    std::set<int> observed_periods;        // finite word periods seen
    bool f_component_five_found = false;   // among isolated roots with real f-symbols
    std::vector<std::string> words_with_f_five;
    int words_scanned = 0;
    int words_pruned = 0;
    int curve_points = 0;  // roots on positive-dimensional fixed sets, not recorded
};

namespace detail {

/// Scan alphabet: every generator plus the inverses of the non-involutions.
inline std::vector<Letter> scan_alphabet(Context c) {
    std::vector<Letter> out;
    const char hi = max_letter(c == Context::P4 ? Context::E4 : c);
    for (char ch = 'A'; ch <= hi; ++ch) out.push_back({ch, false});
    if (c == Context::E3) {
        out.push_back({'A', true});
        out.push_back({'C', true});
    } else {
        for (char ch : {'A', 'C', 'D', 'E', 'F', 'G'}) out.push_back({ch, true});
    }
    return out;
}

inline bool is_real_component(double c) { return c > 0.0 && c <= 1.0; }

}  // namespace detail

/// Enumerate reduced words up to max_len, find their fixed points, and run
/// spin on each root. Words whose map equals an earlier word's map (by
/// evaluation fingerprint) are pruned. The negative observations are reported
/// as "not found up to this length", never as proofs.
inline ScanSummary scan_words(Context context, const ScanConfig& cfg = {}) {
    ScanSummary summary;
    const auto alphabet = detail::scan_alphabet(context);

    // enumerate and prune
    std::vector<Word> words;
    {
        std::mt19937_64 rng(cfg.samples.seed);
        std::uniform_real_distribution<double> u(0.1, 0.9);
        std::vector<ESymbol3> pts3;
        std::vector<ESymbol4> pts4;
        for (int i = 0; i < 8; ++i) {
            pts3.push_back({u(rng), u(rng)});
            pts4.push_back({u(rng), u(rng), u(rng)});
        }
        std::set<std::vector<std::int64_t>> seen;
        auto fp = [&](const Word& w) {
            return context == Context::E3 ? detail::fingerprint(w, pts3, 1e8)
                                          : detail::fingerprint(w, pts4, 1e8);
        };
        {
            Word id;
            id.context = context;
            if (auto f = fp(id)) seen.insert(*f);
        }
        std::vector<Word> level{Word{context, {}}};
        for (int len = 1; len <= cfg.max_len; ++len) {
            std::vector<Word> next;
            for (const Word& w : level) {
                for (const Letter& l : alphabet) {
                    // no immediate cancellation
                    if (!w.letters.empty()) {
                        const Letter& prev = w.letters.back();
                        if (prev.symbol == l.symbol && prev.inverted != l.inverted) continue;
                    }
                    Word w2 = w;
                    w2.letters.push_back(l);
                    if (cfg.prune) {
                        const auto key = fp(w2);
                        if (key.has_value() && !seen.insert(*key).second) {
                            ++summary.words_pruned;
                            continue;
                        }
                    }
                    next.push_back(w2);
                    words.push_back(w2);
                }
            }
            level = std::move(next);
        }
    }
    summary.words_scanned = static_cast<int>(words.size());

    struct PerWord {
        std::optional<int> period;
        std::vector<EigentopeRecord> records;
        std::vector<std::string> f_five;
        int curve_points = 0;
    };
    std::vector<PerWord> results(words.size());

    SolverConfig solver = cfg.solver;
    solver.seeds_from_minima_only = true;
    solver.threads = 1;  // parallelism lives at the word level here
    if (solver.newton_max_iter > 30) solver.newton_max_iter = 30;
    // cap the per-word seeding work by coarsening the grid, not by striding,
    // so coverage stays uniform
    {
        const std::size_t budget = solver.max_seeds != 0 ? solver.max_seeds : 4096;
        const int dim = detail::context_dim(context);
        const double per_axis = std::floor(std::pow(static_cast<double>(budget), 1.0 / dim));
        const double min_step = (solver.box_max - solver.box_min) / std::max(per_axis - 1.0, 1.0);
        solver.grid_step = std::max(solver.grid_step, min_step);
        solver.max_seeds = 0;
    }

    detail::parallel_for(
        words.size(),
        [&](std::size_t i) {
            const Word& w = words[i];
            PerWord& out = results[i];
            out.period = period(w, cfg.period_samples, cfg.period_max_q, cfg.samples);

            const auto roots = find_fixed_points(w, solver);
            for (const FixedPointResult& root : roots) {
                if (!root.isolated) {
                    // a point of an eigenspace curve or surface, not a discrete
                    // eigenvector; counted but not recorded
                    ++out.curve_points;
                    continue;
                }
                EigentopeRecord rec;
                rec.word = render(w);
                rec.evec = root.evec;
                rec.fp_residual = root.residual;

                bool all_real = true;
                for (double c : root.evec) all_real = all_real && detail::is_real_component(c);
                if (all_real) {
                    for (double c : root.evec) rec.f_symbol.push_back(f_from_cos2(c));
                    for (double f : rec.f_symbol)
                        if (std::abs(f - 5.0) < cfg.f_five_tol) out.f_five.push_back(rec.word);
                }

                if (context != Context::E3) {
                    const ESymbol4 e{root.evec[0], root.evec[1], root.evec[2]};
                    try {
                        rec.signature = to_string(classify_signature(e_to_h(e)).label);
                    } catch (const Error&) {
                        rec.signature = "DEGENERATE";
                    }
                    if (const auto s = try_spin(w, e, cfg.spin)) {
                        rec.q = s->q;
                        rec.lambda_q = s->lambda_q;
                        rec.spin_j = s->spin_j;
                        rec.ortho_residual = s->ortho_residual;
                        rec.det_residual = s->det_residual;
                    }
                }
                out.records.push_back(std::move(rec));
            }
        },
        cfg.threads);

    for (PerWord& r : results) {
        if (r.period.has_value()) summary.observed_periods.insert(*r.period);
        summary.curve_points += r.curve_points;
        for (auto& rec : r.records) summary.records.push_back(std::move(rec));
        for (auto& wtxt : r.f_five) {
            summary.f_component_five_found = true;
            summary.words_with_f_five.push_back(wtxt);
        }
    }
    std::sort(summary.records.begin(), summary.records.end(),
              [](const EigentopeRecord& a, const EigentopeRecord& b) {
                  return std::tie(a.word, a.evec) < std::tie(b.word, b.evec);
              });
    return summary;
}

}  // namespace polytope
