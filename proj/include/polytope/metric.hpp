#pragma once

// Metric tensors of the natural frame {p0..p3}, the diagonalizing basis
// change, signature classification, and explicit frame coordinates in an
// ambient orthonormal or (+---)-orthonormal basis.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>

#include "polytope/error.hpp"
#include "polytope/symbols.hpp"

namespace polytope {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

/// Gram matrix of the natural frame: entry(i,j) = rho_max(i,j).
inline Mat4 gram_natural(const RhoVector& r) {
    const std::array<double, 4> rho{r.rho0, r.rho1, r.rho2, r.rho3};
    Mat4 g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = rho[static_cast<std::size_t>(std::max(i, j))];
    return g;
}

/// Diagonal Gram of the orthogonal frame {p3, 3R2, 2R1, 1R0}:
/// rho0 * diag(1/a, 1/b - 1/a, 1/g - 1/b, 1 - 1/g).
inline Mat4 gram_orthogonal(const HSymbol& h, double rho0) {
    if (h.alpha == 0.0) throw DegenerateSymbol("gram_orthogonal: alpha = 0");
    if (h.beta == 0.0) throw DegenerateSymbol("gram_orthogonal: beta = 0");
    if (h.gamma == 0.0) throw DegenerateSymbol("gram_orthogonal: gamma = 0");
    Mat4 g = Mat4::Zero();
    g(0, 0) = rho0 / h.alpha;
    g(1, 1) = rho0 * (1.0 / h.beta - 1.0 / h.alpha);
    g(2, 2) = rho0 * (1.0 / h.gamma - 1.0 / h.beta);
    g(3, 3) = rho0 * (1.0 - 1.0 / h.gamma);
    return g;
}

/// The constant symmetric basis-change matrix B with G_orthogonal = B G_natural B.
inline const Mat4& basis_change_matrix() {
    static const Mat4 b = [] {
        Mat4 m;
        m << 0, 0, 0, 1,
             0, 0, 1, -1,
             0, 1, -1, 0,
             1, -1, 0, 0;
        return m;
    }();
    return b;
}

/// B * g * B; diagonal whenever g is in natural form.
inline Mat4 verify_basis_change(const Mat4& g) {
    const Mat4& b = basis_change_matrix();
    return b * g * b;
}

struct Signature {
    int plus = 0;
    int minus = 0;
    int zero = 0;
};

enum class SignatureLabel { Euclidean, Minkowski, Degenerate, Other };

inline std::string to_string(SignatureLabel s) {
    switch (s) {
        case SignatureLabel::Euclidean: return "EUCLIDEAN";
        case SignatureLabel::Minkowski: return "MINKOWSKI";
        case SignatureLabel::Degenerate: return "DEGENERATE";
        case SignatureLabel::Other: return "OTHER";
    }
    return "OTHER";
}

struct SignatureResult {
    Signature signature;
    SignatureLabel label = SignatureLabel::Other;
    std::array<double, 4> eigenvalues{};
};

/// Count eigenvalue signs of a symmetric matrix; |lambda| below tol (relative
/// to the largest magnitude) counts as zero. EUCLIDEAN is (4,0,0), MINKOWSKI
/// is (1,3,0), any zero eigenvalue is DEGENERATE.
inline SignatureResult classify_signature(const Mat4& g, double tol = kDefaultTol) {
    Eigen::SelfAdjointEigenSolver<Mat4> solver(0.5 * (g + g.transpose()));
    SignatureResult out;
    double maxabs = 0.0;
    for (int i = 0; i < 4; ++i) maxabs = std::max(maxabs, std::abs(solver.eigenvalues()(i)));
    const double cut = tol * std::max(maxabs, 1.0e-300);
    for (int i = 0; i < 4; ++i) {
        const double ev = solver.eigenvalues()(i);
        out.eigenvalues[static_cast<std::size_t>(i)] = ev;
        if (std::abs(ev) < cut)
            ++out.signature.zero;
        else if (ev > 0)
            ++out.signature.plus;
        else
            ++out.signature.minus;
    }
    if (out.signature.zero > 0)
        out.label = SignatureLabel::Degenerate;
    else if (out.signature.plus == 4)
        out.label = SignatureLabel::Euclidean;
    else if (out.signature.plus == 1 && out.signature.minus == 3)
        out.label = SignatureLabel::Minkowski;
    else
        out.label = SignatureLabel::Other;
    return out;
}

/// Chain tests on the H-symbol: alpha > beta > gamma > 1 is Euclidean,
/// 0 < alpha < beta < gamma < 1 is Minkowski (+---); inconclusive chains fall
/// back to the eigenvalue classification of the orthogonal Gram.
inline SignatureResult classify_signature(const HSymbol& h, double rho0 = 1.0,
                                          double tol = kDefaultTol) {
    SignatureResult byEigen = classify_signature(gram_orthogonal(h, rho0), tol);
    const bool euclid_chain = h.alpha > h.beta && h.beta > h.gamma && h.gamma > 1.0;
    const bool minkowski_chain =
        rho0 > 0 && 0.0 < h.alpha && h.alpha < h.beta && h.beta < h.gamma && h.gamma < 1.0;
    if (euclid_chain && byEigen.label == SignatureLabel::Degenerate) {
        // borderline eigenvalue under the tolerance; the strict chain wins
        byEigen.label = SignatureLabel::Euclidean;
    }
    if (minkowski_chain && byEigen.label == SignatureLabel::Degenerate) {
        byEigen.label = SignatureLabel::Minkowski;
    }
    return byEigen;
}

/// Explicit coordinates of the natural frame. Row i of coords holds p_i in an
/// ambient basis whose metric is diag(ambient); the Gram recomputes as
/// coords * diag(ambient) * coords^T.
struct FrameState {
    Mat4 coords = Mat4::Identity();
    Mat4 gram = Mat4::Identity();
    ESymbol4 esym;
    Vec4 ambient = Vec4::Ones();  // +1/-1 per ambient axis
};

/// Construct frame coordinates by placing the orthogonal frame
/// {p3, 3R2, 2R1, 1R0} on the ambient axes with lengths sqrt(|diag|) and
/// recovering p0..p3 by telescoping sums. Positive diagonal entries map to
/// +1 axes (axis 0 first), negative ones to -1 axes.
inline FrameState build_frame(const HSymbol& h, double rho0) {
    const Mat4 diag = gram_orthogonal(h, rho0);
    const SignatureResult cls = classify_signature(h, rho0);
    if (cls.label != SignatureLabel::Euclidean && cls.label != SignatureLabel::Minkowski) {
        throw UnsupportedSignature("build_frame: signature " + to_string(cls.label) +
                                   " admits no real orthogonal frame");
    }

    // Assign each orthogonal-frame vector its own ambient axis, positives first.
    int pos_count = 0;
    for (int k = 0; k < 4; ++k)
        if (diag(k, k) > 0) ++pos_count;
    std::array<int, 4> axis{};
    int next_pos = 0;
    int next_neg = pos_count;
    for (int k = 0; k < 4; ++k) {
        if (diag(k, k) > 0)
            axis[static_cast<std::size_t>(k)] = next_pos++;
        else
            axis[static_cast<std::size_t>(k)] = next_neg++;
    }

    FrameState fs;
    fs.ambient = Vec4::Ones();
    for (int a = pos_count; a < 4; ++a) fs.ambient(a) = -1.0;

    Mat4 ortho = Mat4::Zero();  // rows: p3, 3R2, 2R1, 1R0
    for (int k = 0; k < 4; ++k)
        ortho(k, axis[static_cast<std::size_t>(k)]) = std::sqrt(std::abs(diag(k, k)));

    fs.coords.row(3) = ortho.row(0);
    fs.coords.row(2) = fs.coords.row(3) + ortho.row(1);
    fs.coords.row(1) = fs.coords.row(2) + ortho.row(2);
    fs.coords.row(0) = fs.coords.row(1) + ortho.row(3);

    fs.gram = fs.coords * fs.ambient.asDiagonal() * fs.coords.transpose();
    fs.esym = rho_to_e({fs.gram(0, 0), fs.gram(1, 1), fs.gram(2, 2), fs.gram(3, 3)});
    return fs;
}

/// Scalar product of two frame-row vectors under the ambient metric.
inline double frame_dot(const FrameState& fs, const Eigen::RowVector4d& u,
                        const Eigen::RowVector4d& v) {
    return u * fs.ambient.asDiagonal() * v.transpose();
}

/// Constituting vector kRj (k > j) expressed in the ambient basis:
/// kRj = p_j - p_k for k < 4, and 4Rj = p_j.
inline Eigen::RowVector4d constituting_vector(const FrameState& fs, int k, int j) {
    if (k == 4) return fs.coords.row(j);
    return fs.coords.row(j) - fs.coords.row(k);
}

/// Complementary 3-index vector ik_r_j: kRj minus its projection onto kRi,
/// for 0 <= i < j < k <= 4. Squared norm equals (jRi)^2 (kRj)^2 / (kRi)^2.
inline Eigen::RowVector4d r_vector(const FrameState& fs, int i, int j, int k) {
    if (!(0 <= i && i < j && j < k && k <= 4)) {
        throw DegenerateSymbol("r_vector: indices must satisfy 0 <= i < j < k <= 4");
    }
    const Eigen::RowVector4d rkj = constituting_vector(fs, k, j);
    const Eigen::RowVector4d rki = constituting_vector(fs, k, i);
    const double nki = frame_dot(fs, rki, rki);
    if (nki == 0.0) throw DegenerateSymbol("r_vector: (kRi)^2 vanishes");
    const double nkj = frame_dot(fs, rkj, rkj);
    return rkj - (nkj / nki) * rki;
}

}  // namespace polytope
