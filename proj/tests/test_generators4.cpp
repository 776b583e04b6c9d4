#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "polytope/generators4.hpp"
#include "polytope/words.hpp"

using namespace polytope;
using Catch::Matchers::WithinAbs;

namespace {

double dist(const ESymbol4& a, const ESymbol4& b) {
    return std::max({std::abs(a.epsilon - b.epsilon), std::abs(a.delta - b.delta),
                     std::abs(a.eta - b.eta)});
}

ESymbol4 rnd(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("E-maps at the integer polytopes") {
    CHECK(dist(apply4_forward('D', {0.25, 0.25, 0.5}), {0.25, 0.25, 0.5}) < 1e-15);
    CHECK(dist(apply4_forward('A', {1.0 / 3, 1.0 / 3, 1.0 / 3}), {1.0 / 3, 1.0 / 3, 1.0 / 3}) <
          1e-15);

    // vertex reflection cycles the three 4-D tessellation cells
    const ESymbol4 c1 = apply4_forward('A', {0.25, 0.25, 0.5});
    CHECK(dist(c1, {0.5, 0.25, 0.25}) < 1e-15);
    const ESymbol4 c2 = apply4_forward('A', c1);
    CHECK(dist(c2, {0.25, 0.5, 0.25}) < 1e-15);
    const ESymbol4 c3 = apply4_forward('A', c2);
    CHECK(dist(c3, {0.25, 0.25, 0.5}) < 1e-15);

    // A then H is the transition to the reciprocal polytope
    const Word ah = parse_word("AH", Context::E4);
    CHECK(dist(apply_word(ah, ESymbol4{0.5, 0.25, 0.25}), {0.25, 0.25, 0.5}) < 1e-14);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k) {
        const ESymbol4 e = rnd(rng);
        try {
            CHECK(dist(apply_word(ah, e), dual4(e)) < 1e-12);
        } catch (const SingularTransform&) {
        }
    }
}

TEST_CASE("analytic inverses") {
    const ESymbol4 x{0.3, 0.3, 0.2};
    CHECK(dist(inverse4('E', apply4_forward('E', x)), x) < 1e-12);

    const ESymbol4 gimg = apply4_forward('G', {0.25, 0.25, 0.5});
    CHECK(dist(inverse4('G', gimg), {0.25, 0.25, 0.5}) < 1e-12);

    // the F inverse fixes every point of an F eigenspace curve
    for (double t : {0.2, 0.5, 0.7}) {
        const ESymbol4 p{t, (1 - t) * (1 - t), 0.0};
        CHECK(dist(inverse4('F', p), p) < 1e-12);
    }

    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const ESymbol4 e = rnd(rng);
        for (char letter : {'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H'}) {
            try {
                CHECK(dist(apply4_inverse(letter, apply4_forward(letter, e)), e) < 1e-11);
                CHECK(dist(apply4_forward(letter, apply4_inverse(letter, e)), e) < 1e-11);
            } catch (const SingularTransform&) {
            }
        }
    }

    // finite-order letters: the closed form agrees with the power route
    for (int k = 0; k < 50; ++k) {
        const ESymbol4 e = rnd(rng);
        try {
            CHECK(dist(apply4_inverse('A', e),
                       apply_word(parse_word("AAAAA", Context::E4), e)) < 1e-10);
            CHECK(dist(apply4_inverse('C', e), apply_word(parse_word("CC", Context::E4), e)) <
                  1e-10);
            CHECK(dist(apply4_inverse('D', e), apply_word(parse_word("DDD", Context::E4), e)) <
                  1e-10);
        } catch (const SingularTransform&) {
        }
    }
}

TEST_CASE("generator orders") {
    std::mt19937_64 rng(5);
    const struct {
        const char* word;
        int power;
    } orders[] = {{"A", 6}, {"B", 2}, {"C", 3}, {"D", 4}, {"H", 2}};
    for (int k = 0; k < 200; ++k) {
        const ESymbol4 e = rnd(rng);
        for (const auto& o : orders) {
            try {
                CHECK(dist(apply_word(repeat(parse_word(o.word, Context::E4), o.power), e), e) <
                      1e-9);
            } catch (const SingularTransform&) {
            }
        }
    }
    // E, F, G have no finite period at generic points
    for (char letter : {'E', 'F', 'G'}) {
        const Word w = parse_word(std::string(1, letter), Context::E4);
        CHECK(!period(w, 4, 64).has_value());
    }
}

TEST_CASE("frame matrix fixtures") {
    // rows of the edge-reflection matrix at the 8-cell
    const Mat4 wb = matrix4_forward('B', {0.5, 0.25, 0.25});
    CHECK(wb(0, 0) == -1.0);
    CHECK(wb(0, 1) == 0.0);
    CHECK(wb(0, 2) == 0.0);
    CHECK(wb(0, 3) == 0.0);
    CHECK(wb(1, 0) == -1.0);
    CHECK(wb(1, 1) == 1.0);
    CHECK(wb(1, 2) == 0.0);
    CHECK(wb(1, 3) == 0.0);

    // the 3-face reflection matrix is constant
    std::mt19937_64 rng(7);
    const Mat4 wh = matrix4_forward('H', rnd(rng));
    Mat4 expect;
    expect << -1, 0, 0, 0,
              -1, 0, 0, 1,
              -1, 0, 1, 0,
              -1, 1, 0, 0;
    CHECK((wh - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Gram cross-check reconciles the two map families") {
    // W G W^T must be a natural-form Gram whose E-symbol is the E-map image;
    // this is the master consistency oracle for every generator
    std::mt19937_64 rng(11);
    for (char letter : {'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H'}) {
        int tested = 0;
        while (tested < 100) {
            const ESymbol4 e = rnd(rng);
            try {
                const Mat4 g = gram_natural(h_to_rho(e_to_h(e), 1.0));
                const Mat4 w = matrix4_forward(letter, e);
                const Mat4 img = w * g * w.transpose();
                const double scale = img.cwiseAbs().maxCoeff();
                double worst = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        worst = std::max(
                            worst, std::abs(img(i, j) - img(std::max(i, j), std::max(i, j))));
                CHECK(worst < 1e-8 * scale);
                const ESymbol4 back =
                    rho_to_e({img(0, 0), img(1, 1), img(2, 2), img(3, 3)});
                CHECK(dist(back, apply4_forward(letter, e)) < 1e-8);
                ++tested;
            } catch (const Error&) {
            }
        }
    }
}

TEST_CASE("determinants and involutions") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 100; ++k) {
        const ESymbol4 e = rnd(rng);
        for (char letter : {'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H'}) {
            try {
                CHECK(std::abs(matrix4_forward(letter, e).determinant()) > 1e-12);
            } catch (const SingularTransform&) {
            }
        }
    }
    // B is an involution in both bases: W(B at image) * W(B at e) = identity
    for (int k = 0; k < 100; ++k) {
        const ESymbol4 e = rnd(rng);
        try {
            const Mat4 w1 = matrix4_forward('B', e);
            const Mat4 w2 = matrix4_forward('B', apply4_forward('B', e));
            CHECK((w2 * w1 - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-10);
        } catch (const SingularTransform&) {
        }
    }
}

TEST_CASE("closed-form inverse matrices") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 100; ++k) {
        const ESymbol4 e = rnd(rng);
        for (char letter : {'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H'}) {
            try {
                const Mat4 w = matrix4_forward(letter, e);
                const Mat4 wi = matrix4_inverse(letter, e);
                CHECK((wi * w - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-10);
            } catch (const SingularTransform&) {
            }
        }
    }
}

TEST_CASE("eigenspace descriptors") {
    const auto de = eigenspace4('E');
    REQUIRE(de.loci.size() == 2);
    for (const auto& locus : de.loci) {
        const ESymbol4 p = locus.sample(0, 0);
        CHECK(dist(apply4_forward('E', p), p) < 1e-12);
    }
    CHECK(dist(de.loci[0].sample(0, 0), {0.0, 0.5, 0.5}) == 0.0);
    CHECK(dist(de.loci[1].sample(0, 0), {1.5, 0.5, 0.5}) == 0.0);

    // H curve sample: epsilon = 1 - 2 eta with eta = 0.3
    const ESymbol4 ph{0.4, 0.3, 0.3};
    CHECK(eigenspace4('H').loci[1].contains(ph, 1e-12));
    CHECK(dist(apply4_forward('H', ph), ph) < 1e-12);

    // C curve point at eta = 1/4
    const ESymbol4 pc{1.0 / 6, 0.5, 0.25};
    CHECK(eigenspace4('C').loci[0].contains(pc, 1e-12));
    CHECK(dist(apply4_forward('C', pc), pc) < 1e-12);

    // every locus of every letter consists of fixed points
    for (char letter : {'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H'}) {
        for (const auto& locus : eigenspace4(letter).loci) {
            for (double t : {0.15, 0.35, 0.6}) {
                for (double s : {0.2, 0.55}) {
                    const ESymbol4 p = locus.sample(t, s);
                    try {
                        CHECK(dist(apply4_forward(letter, p), p) < 1e-10);
                    } catch (const SingularTransform&) {
                    }
                }
            }
        }
    }
}
