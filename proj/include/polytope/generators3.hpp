#pragma once

// The four generators of the relative reflection group RRP(3), acting on
// E-symbols [epsilon, delta] of 3-D polytopes:
//
//   A  reflection over vertices     e' = 1 - e/(1-d),  d' = e
//   B  reflection over edges (I)    e' = 1 - e - d,    d' = d
//   C  reflection over edges (II)   e' = 1 - e - d,    d' = e
//   D  reflection over faces        e' = 1 - d/(1-e),  d' = d
//
// Orders: A^5 = B^2 = C^3 = D^2 = identity.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "polytope/error.hpp"
#include "polytope/symbols.hpp"

namespace polytope {

/// One word letter: a generator symbol plus an inversion flag.
struct Letter {
    char symbol = 'A';
    bool inverted = false;
};

/// Records the smallest |denominator| met while applying maps; used by the
/// samplers to discard points too close to a singular surface.
struct DenominatorWatch {
    double min_abs = kInfinity;
    void note(double d) {
        const double a = std::abs(d);
        if (a < min_abs) min_abs = a;
    }
};

namespace detail {
template <typename T>
T guard3(T den, const char* factor, std::size_t step, DenominatorWatch* watch) {
    if (watch != nullptr) watch->note(static_cast<double>(den));
    if (den == T(0)) {
        throw SingularTransform(std::string("singular 3-D reflection: factor ") + factor +
                                    " vanished",
                                step);
    }
    return den;
}

/// Scalar-generic forward map core; T is double in the public interface and
/// long double on the high-accuracy relation-verification path.
template <typename T>
std::array<T, 2> apply3_forward_t(char letter, const std::array<T, 2>& e, std::size_t step,
                                  DenominatorWatch* watch) {
    const T eps = e[0], dlt = e[1];
    switch (letter) {
        case 'A':
            return {T(1) - eps / guard3(T(1) - dlt, "(1 - delta)", step, watch), eps};
        case 'B':
            return {T(1) - eps - dlt, dlt};
        case 'C':
            return {T(1) - eps - dlt, eps};
        case 'D':
            return {T(1) - dlt / guard3(T(1) - eps, "(1 - epsilon)", step, watch), dlt};
        default:
            throw ParseError(std::string("unknown E3 generator '") + letter + "'", step);
    }
}

template <typename T>
std::array<T, 2> apply3_inverse_t(char letter, const std::array<T, 2>& e, std::size_t step,
                                  DenominatorWatch* watch) {
    const T eps = e[0], dlt = e[1];
    switch (letter) {
        case 'A':
            return {dlt, T(1) - dlt / guard3(T(1) - eps, "(1 - epsilon')", step, watch)};
        case 'B':
            return apply3_forward_t('B', e, step, watch);
        case 'C':
            return {dlt, T(1) - eps - dlt};
        case 'D':
            return apply3_forward_t('D', e, step, watch);
        default:
            throw ParseError(std::string("unknown E3 generator '") + letter + "'", step);
    }
}

}  // namespace detail

/// Apply one forward generator letter to an E3 symbol.
inline ESymbol3 apply3_forward(char letter, const ESymbol3& e, std::size_t step = 0,
                               DenominatorWatch* watch = nullptr) {
    const auto r = detail::apply3_forward_t<double>(letter, {e.epsilon, e.delta}, step, watch);
    return {r[0], r[1]};
}

/// Analytic inverse of one generator letter on an E3 symbol. B and D are
/// involutions; A and C invert in closed form (equal to A^4 and C^2).
inline ESymbol3 apply3_inverse(char letter, const ESymbol3& e, std::size_t step = 0,
                               DenominatorWatch* watch = nullptr) {
    const auto r = detail::apply3_inverse_t<double>(letter, {e.epsilon, e.delta}, step, watch);
    return {r[0], r[1]};
}

inline ESymbol3 apply3(const Letter& g, const ESymbol3& e, std::size_t step = 0,
                       DenominatorWatch* watch = nullptr) {
    return g.inverted ? apply3_inverse(g.symbol, e, step, watch)
                      : apply3_forward(g.symbol, e, step, watch);
}

/// Transition to the reciprocal polytope: the coordinate swap (e,d) -> (d,e).
/// Equals the composite A then D.
inline ESymbol3 dual3(const ESymbol3& e) { return {e.delta, e.epsilon}; }

/// A connected piece of a generator's fixed-point set.
template <typename Sym>
struct EigenLocus {
    int dim = 0;  // 0 = point, 1 = curve, 2 = surface
    std::string description;
    std::function<Sym(double, double)> sample;             // parameters ignored when dim < 2
    std::function<bool(const Sym&, double)> contains;      // membership within tolerance
};

template <typename Sym>
struct EigenspaceDescriptor {
    char letter = 'A';
    std::vector<EigenLocus<Sym>> loci;

    [[nodiscard]] bool is_point_set() const {
        for (const auto& l : loci)
            if (l.dim != 0) return false;
        return true;
    }
};

/// Fixed-point loci of the E3 generators:
///   A: the point [(3-sqrt5)/2, (3-sqrt5)/2]
///   B: the curve delta = 1 - 2 epsilon
///   C: the point [1/3, 1/3]
///   D: the curve delta = (1 - epsilon)^2
inline EigenspaceDescriptor<ESymbol3> eigenspace3(char letter) {
    EigenspaceDescriptor<ESymbol3> d;
    d.letter = letter;
    switch (letter) {
        case 'A': {
            const double x = (3.0 - std::sqrt(5.0)) / 2.0;
            d.loci.push_back({0, "point [(3-sqrt5)/2, (3-sqrt5)/2]",
                              [x](double, double) { return ESymbol3{x, x}; },
                              [x](const ESymbol3& e, double tol) {
                                  return std::abs(e.epsilon - x) < tol && std::abs(e.delta - x) < tol;
                              }});
            break;
        }
        case 'B':
            d.loci.push_back({1, "curve delta = 1 - 2 epsilon",
                              [](double t, double) { return ESymbol3{t, 1.0 - 2.0 * t}; },
                              [](const ESymbol3& e, double tol) {
                                  return std::abs(e.delta - (1.0 - 2.0 * e.epsilon)) < tol;
                              }});
            break;
        case 'C':
            d.loci.push_back({0, "point [1/3, 1/3]",
                              [](double, double) { return ESymbol3{1.0 / 3.0, 1.0 / 3.0}; },
                              [](const ESymbol3& e, double tol) {
                                  return std::abs(e.epsilon - 1.0 / 3.0) < tol &&
                                         std::abs(e.delta - 1.0 / 3.0) < tol;
                              }});
            break;
        case 'D':
            d.loci.push_back({1, "curve delta = (1 - epsilon)^2",
                              [](double t, double) {
                                  return ESymbol3{t, (1.0 - t) * (1.0 - t)};
                              },
                              [](const ESymbol3& e, double tol) {
                                  const double want = (1.0 - e.epsilon) * (1.0 - e.epsilon);
                                  return std::abs(e.delta - want) < tol;
                              }});
            break;
        default:
            throw ParseError(std::string("unknown E3 generator '") + letter + "'", 0);
    }
    return d;
}

}  // namespace polytope
