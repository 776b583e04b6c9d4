#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "polytope/generators3.hpp"
#include "polytope/words.hpp"

using namespace polytope;
using Catch::Matchers::WithinAbs;

namespace {

ESymbol3 apply_text(const std::string& text, const ESymbol3& e) {
    return apply_word(parse_word(text, Context::E3), e);
}

double dist(const ESymbol3& a, const ESymbol3& b) {
    return std::max(std::abs(a.epsilon - b.epsilon), std::abs(a.delta - b.delta));
}

}  // namespace

TEST_CASE("single reflections on the integer polyhedra") {
    // octahedron -> cube under the vertex reflection
    const ESymbol3 cube = apply3_forward('A', {0.25, 0.5});
    CHECK_THAT(cube.epsilon, WithinAbs(0.5, 1e-15));
    CHECK_THAT(cube.delta, WithinAbs(0.25, 1e-15));

    // tetrahedron -> the minimal-covering statistical honeycomb
    const ESymbol3 stat = apply3_forward('A', {0.25, 0.25});
    CHECK_THAT(stat.epsilon, WithinAbs(2.0 / 3.0, 1e-15));
    CHECK_THAT(stat.delta, WithinAbs(0.25, 1e-15));

    // B fixes the octahedron (delta = 1 - 2 epsilon), D fixes the cube
    CHECK(dist(apply3_forward('B', {0.25, 0.5}), {0.25, 0.5}) < 1e-15);
    CHECK(dist(apply3_forward('D', {0.5, 0.25}), {0.5, 0.25}) < 1e-15);

    CHECK_THROWS_AS(apply3_forward('A', {0.3, 1.0}), SingularTransform);
    CHECK_THROWS_AS(apply3_forward('D', {1.0, 0.3}), SingularTransform);
}

TEST_CASE("eigenspace descriptors are fixed-point loci") {
    const auto da = eigenspace3('A');
    REQUIRE(da.loci.size() == 1);
    const ESymbol3 pa = da.loci[0].sample(0, 0);
    CHECK_THAT(pa.epsilon, WithinAbs(0.3819660112501051, 1e-14));
    CHECK(dist(apply3_forward('A', pa), pa) < 1e-10);

    const auto dc = eigenspace3('C');
    const ESymbol3 pc = dc.loci[0].sample(0, 0);
    CHECK_THAT(pc.epsilon, WithinAbs(1.0 / 3.0, 1e-15));
    CHECK(dist(apply3_forward('C', pc), pc) < 1e-10);

    // curve samples are fixed as well
    const auto db = eigenspace3('B');
    const ESymbol3 pb = db.loci[0].sample(0.3, 0);
    CHECK_THAT(pb.delta, WithinAbs(0.4, 1e-15));
    CHECK(dist(apply3_forward('B', pb), pb) < 1e-12);
    CHECK(db.loci[0].contains({0.3, 0.4}, 1e-9));

    const auto dd = eigenspace3('D');
    for (double t : {0.2, 0.4, 0.7}) {
        const ESymbol3 p = dd.loci[0].sample(t, 0);
        CHECK(dist(apply3_forward('D', p), p) < 1e-12);
    }
}

TEST_CASE("duality") {
    const ESymbol3 d = dual3({0.5, 0.25});
    CHECK(d.epsilon == 0.25);
    CHECK(d.delta == 0.5);
    CHECK(dist(dual3({0.37, 0.37}), {0.37, 0.37}) == 0.0);

    // the composite A then D swaps the coordinates
    const ESymbol3 ad = apply_text("AD", {0.3, 0.2});
    CHECK_THAT(ad.epsilon, WithinAbs(0.2, 1e-14));
    CHECK_THAT(ad.delta, WithinAbs(0.3, 1e-14));
}

TEST_CASE("generator orders and relation identities on random points") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const struct {
        const char* word;
        int power;
    } rels[] = {{"A", 5}, {"B", 2}, {"C", 3}, {"D", 2},
                {"AC", 4}, {"AD", 2}, {"BC", 2}, {"DCBA", 1}};
    for (int k = 0; k < 200; ++k) {
        const ESymbol3 e{u(rng), u(rng)};
        for (const auto& rel : rels) {
            const Word w = repeat(parse_word(rel.word, Context::E3), rel.power);
            ESymbol3 img;
            try {
                img = apply_word(w, e);
            } catch (const SingularTransform&) {
                continue;
            }
            CHECK(dist(img, e) < 1e-9);
        }
    }

    // each generator equals a product of the other three
    const struct {
        char letter;
        const char* composite;
    } derived[] = {{'A', "CBD"}, {'B', "ADC"}, {'C', "ADB"}, {'D', "CBA"}};
    for (int k = 0; k < 100; ++k) {
        const ESymbol3 e{u(rng), u(rng)};
        for (const auto& d : derived) {
            try {
                const ESymbol3 lhs = apply3_forward(d.letter, e);
                const ESymbol3 rhs = apply_text(d.composite, e);
                CHECK(dist(lhs, rhs) < 1e-9);
            } catch (const SingularTransform&) {
            }
        }
    }
}

TEST_CASE("inverses undo the forward maps") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 100; ++k) {
        const ESymbol3 e{u(rng), u(rng)};
        for (char letter : {'A', 'B', 'C', 'D'}) {
            try {
                const ESymbol3 there = apply3_forward(letter, e);
                const ESymbol3 back = apply3_inverse(letter, there);
                CHECK(dist(back, e) < 1e-12);
            } catch (const SingularTransform&) {
            }
        }
    }
    // explicit power identities: inverse of A equals A^4, of C equals C^2
    for (int k = 0; k < 50; ++k) {
        const ESymbol3 e{u(rng), u(rng)};
        CHECK(dist(apply3_inverse('A', e), apply_text("AAAA", e)) < 1e-11);
        CHECK(dist(apply3_inverse('C', e), apply_text("CC", e)) < 1e-11);
    }
}

TEST_CASE("integer fixtures of three-letter words") {
    CHECK(dist(apply_text("CDB", {0.25, 0.25}), {0.25, 0.25}) < 1e-12);
    CHECK(dist(apply_text("DBC", {0.5, 0.25}), {0.5, 0.25}) < 1e-12);
    CHECK(dist(apply_text("ACAC", {0.25, 0.5}), {0.25, 0.5}) < 1e-12);
}
