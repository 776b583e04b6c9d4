#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "polytope/metric.hpp"
#include "polytope/reference_data.hpp"
#include "polytope/symbols.hpp"

using namespace polytope;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
HSymbol random_h(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    return e_to_h({u(rng), u(rng), u(rng)});
}
}  // namespace

TEST_CASE("gram_natural fills the max-index pattern") {
    const Mat4 g = gram_natural({1.0, 0.5, 1.0 / 3.0, 0.25});
    const double want[4][4] = {{1, 0.5, 1.0 / 3.0, 0.25},
                               {0.5, 0.5, 1.0 / 3.0, 0.25},
                               {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.25},
                               {0.25, 0.25, 0.25, 0.25}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK_THAT(g(i, j), WithinAbs(want[i][j], 1e-15));

    CHECK((gram_natural({1, 1, 1, 1}) - Mat4::Ones()).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    const RhoVector r{u(rng), u(rng), u(rng), u(rng)};
    const Mat4 gr = gram_natural(r);
    CHECK(gr(0, 0) == r.rho0);
    CHECK(gr(1, 1) == r.rho1);
    CHECK(gr(2, 2) == r.rho2);
    CHECK(gr(3, 3) == r.rho3);
    CHECK((gr - gr.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gram_orthogonal diagonals") {
    const Mat4 g = gram_orthogonal({4.0, 3.0, 2.0}, 1.0);
    CHECK_THAT(g(0, 0), WithinAbs(0.25, 1e-15));
    CHECK_THAT(g(1, 1), WithinAbs(1.0 / 12.0, 1e-15));
    CHECK_THAT(g(2, 2), WithinAbs(1.0 / 6.0, 1e-15));
    CHECK_THAT(g(3, 3), WithinAbs(0.5, 1e-15));

    const double s5 = std::sqrt(5.0);
    const HSymbol h534{7.0 - 3.0 * s5, 5.0 - 2.0 * s5, 3.0 - s5};
    const Mat4 gh = gram_orthogonal(h534, 1.0);
    CHECK_THAT(gh(0, 0), WithinRel(1.0 / h534.alpha, 1e-12));
    CHECK_THAT(gh(1, 1), WithinRel(1.0 / h534.beta - 1.0 / h534.alpha, 1e-12));
    CHECK_THAT(gh(2, 2), WithinRel(1.0 / h534.gamma - 1.0 / h534.beta, 1e-12));
    CHECK_THAT(gh(0, 0), WithinAbs(3.42705, 1e-5));
    CHECK_THAT(gh(1, 1), WithinAbs(-1.53262, 1e-5));
    CHECK_THAT(gh(2, 2), WithinAbs(-0.58541, 1e-5));
    CHECK_THAT(gh(3, 3), WithinAbs(-0.30902, 1e-5));

    const Mat4 gs = gram_orthogonal({1.0, 1.0, 1.0}, 1.0);
    CHECK_THAT(gs(0, 0), WithinAbs(1.0, 1e-15));
    CHECK(gs(1, 1) == 0.0);
    CHECK(gs(2, 2) == 0.0);
    CHECK(gs(3, 3) == 0.0);
}

TEST_CASE("basis change diagonalizes the natural Gram") {
    const Mat4 diag = verify_basis_change(gram_natural({1.0, 0.5, 1.0 / 3.0, 0.25}));
    const Mat4 want = gram_orthogonal({4.0, 3.0, 2.0}, 1.0);
    CHECK((diag - want).cwiseAbs().maxCoeff() < 1e-14);

    const Mat4 sphere = verify_basis_change(Mat4::Ones());
    CHECK_THAT(sphere(0, 0), WithinAbs(1.0, 1e-15));
    CHECK(sphere.cwiseAbs().sum() == 1.0);  // every other entry exactly zero

    // diagonal entries are (rho3, rho2-rho3, rho1-rho2, rho0-rho1)
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int k = 0; k < 50; ++k) {
        const RhoVector r{u(rng), u(rng), u(rng), u(rng)};
        const Mat4 d = verify_basis_change(gram_natural(r));
        CHECK_THAT(d(0, 0), WithinAbs(r.rho3, 1e-12));
        CHECK_THAT(d(1, 1), WithinAbs(r.rho2 - r.rho3, 1e-12));
        CHECK_THAT(d(2, 2), WithinAbs(r.rho1 - r.rho2, 1e-12));
        CHECK_THAT(d(3, 3), WithinAbs(r.rho0 - r.rho1, 1e-12));
        double off = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) off = std::max(off, std::abs(d(i, j)));
        CHECK(off < 1e-12);
    }

    // agreement with gram_orthogonal through the H-symbol, random points
    std::mt19937_64 rng2(6);
    for (int k = 0; k < 100; ++k) {
        const HSymbol h = random_h(rng2);
        const Mat4 lhs = verify_basis_change(gram_natural(h_to_rho(h, 1.0)));
        const Mat4 rhs = gram_orthogonal(h, 1.0);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("signature classification") {
    CHECK(classify_signature(e_to_h({0.25, 0.25, 0.25})).label == SignatureLabel::Euclidean);
    CHECK(classify_signature(e_to_h(f_to_e4(FSymbol{5, 3, 4}))).label ==
          SignatureLabel::Minkowski);
    CHECK(classify_signature(HSymbol{1.0, 1.0, 1.0}).label == SignatureLabel::Degenerate);

    for (const HTableRow& row : euclidean_h_table())
        CHECK(classify_signature(e_to_h(f_to_e4(row.f))).label == SignatureLabel::Euclidean);
    for (const HTableRow& row : hyperbolic_h_table()) {
        const SignatureResult r = classify_signature(e_to_h(f_to_e4(row.f)));
        CHECK(r.label == SignatureLabel::Minkowski);
        CHECK(r.signature.plus == 1);
        CHECK(r.signature.minus == 3);
    }

    // eigenvalue counting agrees with the chain tests whenever a chain fires
    std::mt19937_64 rng(9);
    for (int k = 0; k < 300; ++k) {
        HSymbol h;
        try {
            h = random_h(rng);
        } catch (const DegenerateSymbol&) {
            continue;
        }
        const bool euclid = h.alpha > h.beta && h.beta > h.gamma && h.gamma > 1.0;
        const bool mink = 0.0 < h.alpha && h.alpha < h.beta && h.beta < h.gamma && h.gamma < 1.0;
        const SignatureResult r = classify_signature(h);
        if (euclid) CHECK(r.label == SignatureLabel::Euclidean);
        if (mink) CHECK(r.label == SignatureLabel::Minkowski);
    }
}

TEST_CASE("frame construction matches the natural Gram") {
    const FrameState fs = build_frame({4.0, 3.0, 2.0}, 1.0);
    const Mat4 want = gram_natural({1.0, 0.5, 1.0 / 3.0, 0.25});
    CHECK((fs.gram - want).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(fs.ambient == Vec4::Ones());
    CHECK_THAT(fs.esym.epsilon, WithinAbs(0.25, 1e-9));
    CHECK_THAT(fs.esym.delta, WithinAbs(0.25, 1e-9));
    CHECK_THAT(fs.esym.eta, WithinAbs(0.5, 1e-9));

    const double s5 = std::sqrt(5.0);
    const HSymbol h534{7.0 - 3.0 * s5, 5.0 - 2.0 * s5, 3.0 - s5};
    const FrameState fm = build_frame(h534, 1.0);
    CHECK(fm.ambient(0) == 1.0);
    CHECK(fm.ambient(1) == -1.0);
    CHECK(fm.ambient(2) == -1.0);
    CHECK(fm.ambient(3) == -1.0);
    CHECK_THAT(fm.gram(0, 0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(fm.gram(1, 1), WithinRel(1.0 / h534.gamma, 1e-10));
    CHECK_THAT(fm.gram(2, 2), WithinRel(1.0 / h534.beta, 1e-10));
    CHECK_THAT(fm.gram(3, 3), WithinRel(1.0 / h534.alpha, 1e-10));

    CHECK_THROWS_AS(build_frame({1.0, 1.0, 1.0}, 1.0), UnsupportedSignature);
}

TEST_CASE("frame respects the squared-length chain") {
    // (p_{k})^2 = (p_{k+1})^2 + (k+1 R k)^2 along the telescoping sums
    for (const HSymbol h : {HSymbol{4.0, 3.0, 2.0}, HSymbol{16.0, 6.0, 8.0 / 3.0}}) {
        const FrameState fs = build_frame(h, 1.0);
        for (int k = 0; k < 3; ++k) {
            const Eigen::RowVector4d pk = fs.coords.row(k);
            const Eigen::RowVector4d pk1 = fs.coords.row(k + 1);
            const Eigen::RowVector4d step = constituting_vector(fs, k + 1, k);
            CHECK_THAT(frame_dot(fs, pk, pk),
                       WithinAbs(frame_dot(fs, pk1, pk1) + frame_dot(fs, step, step), 1e-12));
        }
    }
}

TEST_CASE("scalar product structure of constituting vectors") {
    // (iRj, iRk) = (iRj)^2 for k < j < i
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    int done = 0;
    while (done < 50) {
        HSymbol h;
        try {
            h = e_to_h({u(rng), u(rng), u(rng)});
        } catch (const DegenerateSymbol&) {
            continue;
        }
        FrameState fs;
        try {
            fs = build_frame(h, 1.0);
        } catch (const UnsupportedSignature&) {
            continue;
        }
        for (int i = 2; i <= 4; ++i)
            for (int j = 1; j < i; ++j)
                for (int k = 0; k < j; ++k) {
                    const auto rij = constituting_vector(fs, i, j);
                    const auto rik = constituting_vector(fs, i, k);
                    CHECK_THAT(frame_dot(fs, rij, rik),
                               WithinAbs(frame_dot(fs, rij, rij), 1e-10));
                }
        ++done;
    }
}

TEST_CASE("complementary r-vectors") {
    const FrameState fs = build_frame({4.0, 3.0, 2.0}, 1.0);
    for (int i = 0; i <= 2; ++i)
        for (int j = i + 1; j <= 3; ++j)
            for (int k = j + 1; k <= 4; ++k) {
                const auto r = r_vector(fs, i, j, k);
                const auto rkj = constituting_vector(fs, k, j);
                const auto rki = constituting_vector(fs, k, i);
                const auto rji = constituting_vector(fs, j, i);
                const double want = frame_dot(fs, rji, rji) * frame_dot(fs, rkj, rkj) /
                                    frame_dot(fs, rki, rki);
                CHECK_THAT(frame_dot(fs, r, r), WithinAbs(want, 1e-10));
                CHECK_THAT(frame_dot(fs, r, rki), WithinAbs(0.0, 1e-12));
            }
    CHECK_THROWS_AS(r_vector(fs, 2, 1, 0), DegenerateSymbol);  // indices must increase
}
