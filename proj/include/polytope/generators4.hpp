#pragma once

// The eight generators of the relative reflection group RRP(4) as rational
// maps on E-symbols [epsilon, delta, eta], together with their 4x4 frame
// matrices (the absolute group ARP(4)) and fixed-point descriptors.
//
// E-basis maps and orders:
//   A  vertices        e' = 1 - e(1-h)/(1-d-h), d' = e, h' = d        A^6 = id
//   B  edges I         e' = 1 - e - d/(1-h),    d' = d, h' = h        B^2 = id
//   C  edges II        e' = 1 - e - d/(1-h),    d' = d, h' = e/(e+d)  C^3 = id
//   D  edges III       e' = 1 - e - d/(1-h),    d' = e, h' = d/(e+d)  D^4 = id
//   E  faces I         e' = 1 - h - d/(1-e),    d' = h, h' = d/(d+h)  no finite order
//   F  faces II        e' = 1 - h - d/(1-e),    d' = d, h' = h/(d+h)  no finite order
//   G  faces III       e' = 1 - h - d/(1-e),    d' = d, h' = e        no finite order
//   H  3-faces         e' = 1 - h(1-e)/(1-e-d), d' = h, h' = d        H^2 = id
//
// Frame matrices W act multiplicatively on the natural frame, p' = W p, with
// coordinates expressed in the frame of the initial polytope. Both routes are
// implemented independently and reconciled by the Gram cross-check
// W G W^T = G' (natural form of the image symbol), which each matrix below
// satisfies identically. Inverse letters use closed-form inverse matrices;
// numerically inverting W near a singular surface of a single step loses all
// precision even where the full word product stays finite.
//
// The map and matrix cores are templates over the scalar type: double for
// ordinary use, long double where a deep relation chain needs the headroom.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>

#include "polytope/error.hpp"
#include "polytope/generators3.hpp"
#include "polytope/metric.hpp"
#include "polytope/symbols.hpp"

namespace polytope {

namespace detail {

template <typename T>
T guard4(T den, const char* factor, std::size_t step, DenominatorWatch* watch) {
    if (watch != nullptr) watch->note(static_cast<double>(den));
    if (den == T(0)) {
        throw SingularTransform(std::string("singular 4-D reflection: factor ") + factor +
                                    " vanished",
                                step);
    }
    return den;
}

template <typename T>
std::array<T, 3> apply4_forward_t(char letter, const std::array<T, 3>& v, std::size_t step,
                                  DenominatorWatch* watch) {
    const T e = v[0], d = v[1], h = v[2];
    switch (letter) {
        case 'A':
            return {T(1) - e * (T(1) - h) / guard4(T(1) - d - h, "(1-delta-eta)", step, watch), e,
                    d};
        case 'B':
            return {T(1) - e - d / guard4(T(1) - h, "(1-eta)", step, watch), d, h};
        case 'C':
            return {T(1) - e - d / guard4(T(1) - h, "(1-eta)", step, watch), d,
                    e / guard4(e + d, "(epsilon+delta)", step, watch)};
        case 'D':
            return {T(1) - e - d / guard4(T(1) - h, "(1-eta)", step, watch), e,
                    d / guard4(e + d, "(epsilon+delta)", step, watch)};
        case 'E':
            return {T(1) - h - d / guard4(T(1) - e, "(1-epsilon)", step, watch), h,
                    d / guard4(d + h, "(delta+eta)", step, watch)};
        case 'F':
            return {T(1) - h - d / guard4(T(1) - e, "(1-epsilon)", step, watch), d,
                    h / guard4(d + h, "(delta+eta)", step, watch)};
        case 'G':
            return {T(1) - h - d / guard4(T(1) - e, "(1-epsilon)", step, watch), d, e};
        case 'H':
            return {T(1) - h * (T(1) - e) / guard4(T(1) - e - d, "(1-epsilon-delta)", step, watch),
                    h, d};
        default:
            throw ParseError(std::string("unknown E4 generator '") + letter + "'", step);
    }
}

template <typename T>
std::array<T, 3> apply4_inverse_t(char letter, const std::array<T, 3>& v, std::size_t step,
                                  DenominatorWatch* watch) {
    const T e = v[0], d = v[1], h = v[2];
    switch (letter) {
        case 'A':
            return {d, h,
                    ((T(1) - e) * (T(1) - h) - d) /
                        guard4(T(1) - e - d, "(1-epsilon'-delta')", step, watch)};
        case 'B':
            return apply4_forward_t('B', v, step, watch);
        case 'C': {
            const T e0 = d * h / guard4(T(1) - h, "(1-eta')", step, watch);
            return {e0, d, T(1) - d / guard4(T(1) - e - e0, "(1-epsilon'-epsilon)", step, watch)};
        }
        case 'D': {
            const T d0 = d * h / guard4(T(1) - h, "(1-eta')", step, watch);
            return {d, d0, T(1) - d0 / guard4(T(1) - e - d, "(1-epsilon'-delta')", step, watch)};
        }
        case 'E': {
            const T d0 = d * h / guard4(T(1) - h, "(1-eta')", step, watch);
            return {T(1) - d0 / guard4(T(1) - e - d, "(1-epsilon'-delta')", step, watch), d0, d};
        }
        case 'F': {
            const T h0 = d * h / guard4(T(1) - h, "(1-eta')", step, watch);
            return {T(1) - d / guard4(T(1) - e - h0, "(1-epsilon'-eta)", step, watch), d, h0};
        }
        case 'G':
            return {h, d, T(1) - e - d / guard4(T(1) - h, "(1-eta')", step, watch)};
        case 'H':
            return apply4_forward_t('H', v, step, watch);
        default:
            throw ParseError(std::string("unknown E4 generator '") + letter + "'", step);
    }
}

template <typename T>
using Mat4T = Eigen::Matrix<T, 4, 4>;

/// Forward frame matrix core. Row i holds the coefficients of p'_i over
/// {p0..p3}.
template <typename T>
Mat4T<T> matrix4_forward_t(char letter, const std::array<T, 3>& v, std::size_t step,
                           DenominatorWatch* watch) {
    const T e = v[0], d = v[1], h = v[2];
    Mat4T<T> w = Mat4T<T>::Zero();
    switch (letter) {
        case 'A': {
            // p'0 = -alpha p3, p'1 = p0 + p'0, p'2 = gamma p1 + p'0,
            // p'3 = beta p2 + p'0; alpha, beta, gamma as in the H-symbol
            const T a = (T(1) - e - d) * (T(1) - d - h) /
                        guard4(e * d * h, "epsilon*delta*eta", step, watch);
            const T g = (T(1) - d - h) / guard4(e * (T(1) - h), "epsilon*(1-eta)", step, watch);
            const T b =
                (T(1) - e) * (T(1) - d - h) / guard4(e * d, "epsilon*delta", step, watch);
            w << T(0), T(0), T(0), -a,
                 T(1), T(0), T(0), -a,
                 T(0), g, T(0), -a,
                 T(0), T(0), b, -a;
            return w;
        }
        case 'B': {
            const T d1 = guard4(d + e * (T(1) - h), "delta+epsilon*(1-eta)", step, watch);
            const T d2 = guard4(e + h * (d - e), "epsilon+eta*(delta-epsilon)", step, watch);
            w << T(-1), T(0), T(0), T(0),
                 T(-1), T(1), T(0), T(0),
                 -d / d1, T(0), (T(1) - e) * (T(1) - h) / d1, T(0),
                 -d * h / d2, T(0), T(0), (T(1) - e - d) * (T(1) - h) / d2;
            return w;
        }
        case 'C': {
            const T d1 = guard4(d + e * (T(1) - h), "delta+epsilon*(1-eta)", step, watch);
            const T d2 = guard4(e + h * (d - e), "epsilon+eta*(delta-epsilon)", step, watch);
            const T c0 = -(T(1) - e - d) * (T(1) - h) / guard4(d * h, "delta*eta", step, watch);
            const T k = e * (T(1) - h) / d2;
            w << T(0), T(0), T(0), c0,
                 T(0), T(1), T(0), c0,
                 e * (T(1) - h) / d1, T(0), (T(1) - e) * (T(1) - h) / d1, c0,
                 k, T(0), T(0), k * c0;
            return w;
        }
        case 'D': {
            const T d1 = guard4(d + e * (T(1) - h), "delta+epsilon*(1-eta)", step, watch);
            const T c0 = -(T(1) - e - d) * (T(1) - h) / guard4(d * h, "delta*eta", step, watch);
            w << T(0), T(0), T(0), c0,
                 T(0), T(1), T(0), c0,
                 e * (T(1) - h) / d1, T(0), (T(1) - e) * (T(1) - h) / d1, c0,
                 T(0), T(0), (T(1) - e) * (T(1) - h) / d, c0;
            return w;
        }
        case 'E': {
            const T d3 = guard4(d + h * (T(1) - e), "delta+eta*(1-epsilon)", step, watch);
            w << T(-1), T(0), T(0), T(0),
                 T(-1), T(0), T(1), T(0),
                 T(-1), d / d3, T(0), (T(1) - e - d) / d3,
                 T(-1), T(1), T(0), T(0);
            return w;
        }
        case 'F': {
            const T d3 = guard4(d + h * (T(1) - e), "delta+eta*(1-epsilon)", step, watch);
            const T d4 = guard4(h + e * (d - h), "eta+epsilon*(delta-eta)", step, watch);
            w << T(-1), T(0), T(0), T(0),
                 T(-1), T(0), T(1), T(0),
                 T(-1), d / d3, T(0), (T(1) - e - d) / d3,
                 -h * (T(1) - e) / d4, T(0), T(0), (T(1) - e - d) / d4;
            return w;
        }
        case 'G': {
            const T d3 = guard4(d + h * (T(1) - e), "delta+eta*(1-epsilon)", step, watch);
            const T d4 = guard4(h + e * (d - h), "eta+epsilon*(delta-eta)", step, watch);
            const T c0 = -(T(1) - e - d) / guard4(h * (T(1) - e), "eta*(1-epsilon)", step, watch);
            const T k2 = d / d3;
            const T k3 = e * d / d4;
            w << T(0), T(0), T(0), c0,
                 T(0), T(0), T(1), c0,
                 T(0), k2, T(0), k2 * c0,
                 k3, T(0), T(0), k3 * c0;
            return w;
        }
        case 'H':
            w << T(-1), T(0), T(0), T(0),
                 T(-1), T(0), T(0), T(1),
                 T(-1), T(0), T(1), T(0),
                 T(-1), T(1), T(0), T(0);
            return w;
        default:
            throw ParseError(std::string("unknown P4 generator '") + letter + "'", step);
    }
}

/// Closed-form inverse of the frame matrix, evaluated at the point where the
/// forward matrix would act (the E-preimage of the current symbol). Each
/// entry is a plain rational expression, so the inverse stays finite and
/// accurate where the forward matrix blows up.
template <typename T>
Mat4T<T> matrix4_inverse_t(char letter, const std::array<T, 3>& v, std::size_t step,
                           DenominatorWatch* watch) {
    const T e = v[0], d = v[1], h = v[2];
    Mat4T<T> w = Mat4T<T>::Zero();
    switch (letter) {
        case 'A': {
            const T gi = e * (T(1) - h) / guard4(T(1) - d - h, "(1-delta-eta)", step, watch);
            const T bi = e * d / guard4((T(1) - e) * (T(1) - d - h),
                                        "(1-epsilon)(1-delta-eta)", step, watch);
            const T ai = e * d * h / guard4((T(1) - e - d) * (T(1) - d - h),
                                            "(1-epsilon-delta)(1-delta-eta)", step, watch);
            w << T(-1), T(1), T(0), T(0),
                 -gi, T(0), gi, T(0),
                 -bi, T(0), T(0), bi,
                 -ai, T(0), T(0), T(0);
            return w;
        }
        case 'B': {
            const T d1 = d + e * (T(1) - h);
            const T d2 = e + h * (d - e);
            const T q1 =
                guard4((T(1) - e) * (T(1) - h), "(1-epsilon)(1-eta)", step, watch);
            const T q2 = guard4((T(1) - e - d) * (T(1) - h), "(1-epsilon-delta)(1-eta)", step,
                                watch);
            w << T(-1), T(0), T(0), T(0),
                 T(-1), T(1), T(0), T(0),
                 -d / q1, T(0), d1 / q1, T(0),
                 -d * h / q2, T(0), T(0), d2 / q2;
            return w;
        }
        case 'C': {
            const T d1 = d + e * (T(1) - h);
            const T d2 = e + h * (d - e);
            const T q0 = guard4(e * (T(1) - h), "epsilon*(1-eta)", step, watch);
            const T q1 =
                guard4((T(1) - e) * (T(1) - h), "(1-epsilon)(1-eta)", step, watch);
            const T q2 = guard4((T(1) - e - d) * (T(1) - h), "(1-epsilon-delta)(1-eta)", step,
                                watch);
            w << T(-1), T(0), T(0), d2 / q0,
                 T(-1), T(1), T(0), T(0),
                 -d / q1, T(0), d1 / q1, -d2 / q1,
                 -d * h / q2, T(0), T(0), T(0);
            return w;
        }
        case 'D': {
            const T d1 = d + e * (T(1) - h);
            const T q0 = guard4(e * (T(1) - h), "epsilon*(1-eta)", step, watch);
            const T q1 =
                guard4((T(1) - e) * (T(1) - h), "(1-epsilon)(1-eta)", step, watch);
            const T q2 = guard4((T(1) - e - d) * (T(1) - h), "(1-epsilon-delta)(1-eta)", step,
                                watch);
            w << T(-1), T(0), d1 / q0, -d / q0,
                 T(-1), T(1), T(0), T(0),
                 -d / q1, T(0), T(0), d / q1,
                 -d * h / q2, T(0), T(0), T(0);
            return w;
        }
        case 'E': {
            const T d3 = d + h * (T(1) - e);
            const T q = guard4(T(1) - e - d, "(1-epsilon-delta)", step, watch);
            w << T(-1), T(0), T(0), T(0),
                 T(-1), T(0), T(0), T(1),
                 T(-1), T(1), T(0), T(0),
                 -h * (T(1) - e) / q, T(0), d3 / q, -d / q;
            return w;
        }
        case 'F': {
            const T d3 = d + h * (T(1) - e);
            const T d4 = h + e * (d - h);
            const T qd = guard4(d, "delta", step, watch);
            const T q = guard4(T(1) - e - d, "(1-epsilon-delta)", step, watch);
            w << T(-1), T(0), T(0), T(0),
                 T(-1), T(0), d3 / qd, -d4 / qd,
                 T(-1), T(1), T(0), T(0),
                 -h * (T(1) - e) / q, T(0), T(0), d4 / q;
            return w;
        }
        case 'G': {
            const T d3 = d + h * (T(1) - e);
            const T d4 = h + e * (d - h);
            const T qde = guard4(d * e, "delta*epsilon", step, watch);
            const T qd = guard4(d, "delta", step, watch);
            const T q = guard4(T(1) - e - d, "(1-epsilon-delta)", step, watch);
            w << T(-1), T(0), T(0), d4 / qde,
                 T(-1), T(0), d3 / qd, T(0),
                 T(-1), T(1), T(0), T(0),
                 -h * (T(1) - e) / q, T(0), T(0), T(0);
            return w;
        }
        case 'H':
            return matrix4_forward_t('H', v, step, watch);
        default:
            throw ParseError(std::string("unknown P4 generator '") + letter + "'", step);
    }
}

}  // namespace detail

/// Apply one forward generator letter to an E4 symbol.
inline ESymbol4 apply4_forward(char letter, const ESymbol4& v, std::size_t step = 0,
                               DenominatorWatch* watch = nullptr) {
    const auto r =
        detail::apply4_forward_t<double>(letter, {v.epsilon, v.delta, v.eta}, step, watch);
    return {r[0], r[1], r[2]};
}

/// Analytic inverse of one generator letter on an E4 symbol. Every letter
/// inverts in closed form; for the finite-order letters the closed form
/// agrees with the corresponding power (A^5, B, C^2, D^3, H) wherever both
/// are defined, but stays numerically exact next to mid-orbit singularities.
inline ESymbol4 apply4_inverse(char letter, const ESymbol4& v, std::size_t step = 0,
                               DenominatorWatch* watch = nullptr) {
    const auto r =
        detail::apply4_inverse_t<double>(letter, {v.epsilon, v.delta, v.eta}, step, watch);
    return {r[0], r[1], r[2]};
}

inline ESymbol4 apply4(const Letter& g, const ESymbol4& v, std::size_t step = 0,
                       DenominatorWatch* watch = nullptr) {
    return g.inverted ? apply4_inverse(g.symbol, v, step, watch)
                      : apply4_forward(g.symbol, v, step, watch);
}

/// Analytic inverse map for the letters without a finite period (E, F, G);
/// valid for every letter.
inline ESymbol4 inverse4(char letter, const ESymbol4& v, std::size_t step = 0,
                         DenominatorWatch* watch = nullptr) {
    return apply4_inverse(letter, v, step, watch);
}

/// Transition to the reciprocal polytope: the swap (e,d,h) -> (h,d,e).
/// Equals the composite A then H.
inline ESymbol4 dual4(const ESymbol4& v) { return {v.eta, v.delta, v.epsilon}; }

/// Forward frame matrix of one generator letter evaluated at an E4 symbol.
inline Mat4 matrix4_forward(char letter, const ESymbol4& v, std::size_t step = 0,
                            DenominatorWatch* watch = nullptr) {
    return detail::matrix4_forward_t<double>(letter, {v.epsilon, v.delta, v.eta}, step, watch);
}

/// Closed-form inverse frame matrix at the E-preimage point.
inline Mat4 matrix4_inverse(char letter, const ESymbol4& v, std::size_t step = 0,
                            DenominatorWatch* watch = nullptr) {
    return detail::matrix4_inverse_t<double>(letter, {v.epsilon, v.delta, v.eta}, step, watch);
}

/// Frame matrix of a letter with its inversion flag. For an inverse letter the
/// caller must pass the E-preimage point (where the forward matrix would act).
inline Mat4 matrix4(const Letter& g, const ESymbol4& at, std::size_t step = 0,
                    DenominatorWatch* watch = nullptr) {
    return g.inverted ? matrix4_inverse(g.symbol, at, step, watch)
                      : matrix4_forward(g.symbol, at, step, watch);
}

/// Fixed-point loci of the E4 generators.
inline EigenspaceDescriptor<ESymbol4> eigenspace4(char letter) {
    EigenspaceDescriptor<ESymbol4> d;
    d.letter = letter;
    auto point = [](double a, double b, double c, const std::string& text) {
        return EigenLocus<ESymbol4>{
            0, text, [a, b, c](double, double) { return ESymbol4{a, b, c}; },
            [a, b, c](const ESymbol4& e, double tol) {
                return std::abs(e.epsilon - a) < tol && std::abs(e.delta - b) < tol &&
                       std::abs(e.eta - c) < tol;
            }};
    };
    switch (letter) {
        case 'A':
            d.loci.push_back(point(1.0 / 3, 1.0 / 3, 1.0 / 3, "point [1/3, 1/3, 1/3]"));
            d.loci.push_back(point(1.0, 1.0, 1.0, "point [1, 1, 1]"));
            break;
        case 'B':
            d.loci.push_back(
                {2, "surface delta = (1 - 2 epsilon)(1 - eta)",
                 [](double t, double u) { return ESymbol4{t, (1 - 2 * t) * (1 - u), u}; },
                 [](const ESymbol4& e, double tol) {
                     return std::abs(e.delta - (1 - 2 * e.epsilon) * (1 - e.eta)) < tol;
                 }});
            break;
        case 'C':
            d.loci.push_back(
                {1, "curve epsilon = eta/(1+2 eta), delta = (1-eta)/(1+2 eta)",
                 [](double t, double) {
                     return ESymbol4{t / (1 + 2 * t), (1 - t) / (1 + 2 * t), t};
                 },
                 [](const ESymbol4& e, double tol) {
                     const double s = 1 + 2 * e.eta;
                     return std::abs(e.epsilon - e.eta / s) < tol &&
                            std::abs(e.delta - (1 - e.eta) / s) < tol;
                 }});
            break;
        case 'D':
            d.loci.push_back(point(0.25, 0.25, 0.5, "point [1/4, 1/4, 1/2]"));
            break;
        case 'E':
            d.loci.push_back(point(0.0, 0.5, 0.5, "point [0, 1/2, 1/2]"));
            d.loci.push_back(point(1.5, 0.5, 0.5, "point [3/2, 1/2, 1/2]"));
            break;
        case 'F':
            d.loci.push_back({1, "curve eta = 0, delta = (1 - epsilon)^2",
                              [](double t, double) {
                                  return ESymbol4{t, (1 - t) * (1 - t), 0.0};
                              },
                              [](const ESymbol4& e, double tol) {
                                  return std::abs(e.eta) < tol &&
                                         std::abs(e.delta - (1 - e.epsilon) * (1 - e.epsilon)) < tol;
                              }});
            d.loci.push_back({1, "curve epsilon = 0, delta = 1 - eta",
                              [](double t, double) { return ESymbol4{0.0, 1 - t, t}; },
                              [](const ESymbol4& e, double tol) {
                                  return std::abs(e.epsilon) < tol &&
                                         std::abs(e.delta - (1 - e.eta)) < tol;
                              }});
            d.loci.push_back({1, "curve epsilon = 2 - eta, delta = 1 - eta",
                              [](double t, double) { return ESymbol4{2 - t, 1 - t, t}; },
                              [](const ESymbol4& e, double tol) {
                                  return std::abs(e.epsilon - (2 - e.eta)) < tol &&
                                         std::abs(e.delta - (1 - e.eta)) < tol;
                              }});
            break;
        case 'G':
            d.loci.push_back(
                {1, "curve eta = epsilon, delta = (1 - epsilon)(1 - 2 epsilon)",
                 [](double t, double) { return ESymbol4{t, (1 - t) * (1 - 2 * t), t}; },
                 [](const ESymbol4& e, double tol) {
                     return std::abs(e.eta - e.epsilon) < tol &&
                            std::abs(e.delta - (1 - e.epsilon) * (1 - 2 * e.epsilon)) < tol;
                 }});
            break;
        case 'H':
            d.loci.push_back({1, "curve epsilon = 1, delta = eta",
                              [](double t, double) { return ESymbol4{1.0, t, t}; },
                              [](const ESymbol4& e, double tol) {
                                  return std::abs(e.epsilon - 1.0) < tol &&
                                         std::abs(e.delta - e.eta) < tol;
                              }});
            d.loci.push_back({1, "curve epsilon = 1 - 2 eta, delta = eta",
                              [](double t, double) { return ESymbol4{1 - 2 * t, t, t}; },
                              [](const ESymbol4& e, double tol) {
                                  return std::abs(e.epsilon - (1 - 2 * e.eta)) < tol &&
                                         std::abs(e.delta - e.eta) < tol;
                              }});
            break;
        default:
            throw ParseError(std::string("unknown E4 generator '") + letter + "'", 0);
    }
    return d;
}

}  // namespace polytope
