#pragma once

// Symbol algebra for generalized regular polytopes: conversions among
// f-symbols, E-symbols, H-symbols and the rho-vector of scalar squares,
// plus the elementary combinatorial quantities of 3-D honeycombs.
//
// All components are plain doubles; entries need not be integers. An
// f-component of +infinity is admitted and corresponds to cos^2(pi/f) = 1.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "polytope/error.hpp"

namespace polytope {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Schlafli symbol {f1, ..., f(n-1)}; 1 to 3 entries for dimensions 2 to 4.
struct FSymbol {
    std::vector<double> entries;

    FSymbol() = default;
    explicit FSymbol(std::vector<double> e) : entries(std::move(e)) {}
    FSymbol(std::initializer_list<double> e) : entries(e) {}

    [[nodiscard]] int dimension() const { return static_cast<int>(entries.size()) + 1; }
};

/// E-symbol of a 3-D polytope: [epsilon, delta].
struct ESymbol3 {
    double epsilon = 0.0;
    double delta = 0.0;
};

/// E-symbol of a 4-D polytope: [epsilon, delta, eta].
struct ESymbol4 {
    double epsilon = 0.0;
    double delta = 0.0;
    double eta = 0.0;
};

/// H-symbol: the ratios alpha = rho0/rho3, beta = rho0/rho2, gamma = rho0/rho1.
struct HSymbol {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Scalar squares of the natural frame vectors, rho_i = (p_i)^2.
struct RhoVector {
    double rho0 = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    double rho3 = 0.0;
};

/// cos^2(pi/f) for f > 1; +infinity maps to 1.
inline double cos2_pi_over(double f) {
    if (std::isinf(f) && f > 0) return 1.0;
    if (!(f > 1.0)) {
        throw NonRealSymbol("f-component " + std::to_string(f) +
                            " is not > 1; the dihedral angle pi/f is undefined");
    }
    const double c = std::cos(std::numbers::pi / f);
    return c * c;
}

/// Inverse of cos2_pi_over on (0, 1]; component 1 maps to +infinity.
inline double f_from_cos2(double c) {
    if (c == 1.0) return kInfinity;
    if (!(c > 0.0 && c < 1.0)) {
        throw NonRealSymbol("E-component " + std::to_string(c) +
                            " lies outside (0, 1]; the f-symbol would be complex");
    }
    return std::numbers::pi / std::acos(std::sqrt(c));
}

/// Componentwise cos^2(pi/f_i) of an f-symbol of any supported dimension.
inline std::vector<double> f_to_e(const FSymbol& f) {
    if (f.entries.empty() || f.entries.size() > 3) {
        throw NonRealSymbol("f-symbol must have 1 to 3 entries");
    }
    std::vector<double> out;
    out.reserve(f.entries.size());
    for (double fi : f.entries) out.push_back(cos2_pi_over(fi));
    return out;
}

inline ESymbol3 f_to_e3(const FSymbol& f) {
    if (f.dimension() != 3) throw NonRealSymbol("expected a 2-entry f-symbol");
    auto v = f_to_e(f);
    return {v[0], v[1]};
}

inline ESymbol4 f_to_e4(const FSymbol& f) {
    if (f.dimension() != 4) throw NonRealSymbol("expected a 3-entry f-symbol");
    auto v = f_to_e(f);
    return {v[0], v[1], v[2]};
}

inline FSymbol e_to_f(const ESymbol3& e) {
    return FSymbol{{f_from_cos2(e.epsilon), f_from_cos2(e.delta)}};
}

inline FSymbol e_to_f(const ESymbol4& e) {
    return FSymbol{{f_from_cos2(e.epsilon), f_from_cos2(e.delta), f_from_cos2(e.eta)}};
}

/// H-symbol of a 4-D E-symbol.
///
/// alpha = (1-e-d)(1-d-h)/(e d h), beta = (1-e)(1-d-h)/(e d),
/// gamma = (1-d-h)/(e(1-h)).
inline HSymbol e_to_h(const ESymbol4& e) {
    const double eps = e.epsilon, dlt = e.delta, eta = e.eta;
    if (eps == 0.0) throw DegenerateSymbol("e_to_h: epsilon vanishes");
    if (dlt == 0.0) throw DegenerateSymbol("e_to_h: delta vanishes");
    if (eta == 0.0) throw DegenerateSymbol("e_to_h: eta vanishes");
    if (1.0 - eta == 0.0) throw DegenerateSymbol("e_to_h: factor (1 - eta) vanishes");
    return {(1 - eps - dlt) * (1 - dlt - eta) / (eps * dlt * eta),
            (1 - eps) * (1 - dlt - eta) / (eps * dlt),
            (1 - dlt - eta) / (eps * (1 - eta))};
}

/// E-symbol from the scalar squares of the natural frame.
inline ESymbol4 rho_to_e(const RhoVector& r) {
    if (r.rho0 == r.rho2) throw DegenerateSymbol("rho_to_e: rho0 = rho2");
    if (r.rho1 == r.rho3) throw DegenerateSymbol("rho_to_e: rho1 = rho3");
    if (r.rho2 == 0.0) throw DegenerateSymbol("rho_to_e: rho2 = 0");
    return {(r.rho1 - r.rho2) / (r.rho0 - r.rho2),
            (r.rho2 - r.rho3) * (r.rho0 - r.rho1) / ((r.rho1 - r.rho3) * (r.rho0 - r.rho2)),
            r.rho3 * (r.rho1 - r.rho2) / (r.rho2 * (r.rho1 - r.rho3))};
}

/// Scalar squares (rho0, rho0/gamma, rho0/beta, rho0/alpha) for a given rho0.
inline RhoVector h_to_rho(const HSymbol& h, double rho0) {
    if (rho0 == 0.0) throw DegenerateSymbol("h_to_rho: rho0 = 0");
    if (h.alpha == 0.0) throw DegenerateSymbol("h_to_rho: alpha = 0");
    if (h.beta == 0.0) throw DegenerateSymbol("h_to_rho: beta = 0");
    if (h.gamma == 0.0) throw DegenerateSymbol("h_to_rho: gamma = 0");
    return {rho0, rho0 / h.gamma, rho0 / h.beta, rho0 / h.alpha};
}

/// Uncertainty pi * |dm| / m of the angular coordinate of a non-integer polygon.
inline double angle_uncertainty(double m, double dm) {
    if (!(m > 0.0)) throw NonRealSymbol("angle_uncertainty: m must be positive");
    return std::numbers::pi * std::abs(dm) / m;
}

/// Deviation of m from the nearest integer, m - round(m).
inline double nearest_integer_deviation(double m) { return m - std::round(m); }

/// Real-valued element counts of a {m, i} polyhedron.
struct HoneycombStats {
    double vertices = 0.0;        // y
    double edges = 0.0;           // x
    double faces = 0.0;           // n
    double edges_per_face = 0.0;  // m
    double vertex_index = 0.0;    // i
};

/// Vertex/edge/face counts of {m, i} from the incidence and Euler relations.
///
/// y = 4m/D, x = 2mi/D, n = 4i/D with D = 4 - (m-2)(i-2); finite only for D > 0.
inline HoneycombStats honeycomb_counts(double m, double i) {
    const double denom = 4.0 - (m - 2.0) * (i - 2.0);
    if (!(denom > 0.0)) {
        throw InfiniteHoneycomb("honeycomb_counts: {" + std::to_string(m) + ", " +
                                std::to_string(i) + "} tessellates a flat or hyperbolic plane");
    }
    return {4.0 * m / denom, 2.0 * m * i / denom, 4.0 * i / denom, m, i};
}

}  // namespace polytope
