#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "polytope/words.hpp"

using namespace polytope;
using Catch::Matchers::WithinAbs;

namespace {
const std::filesystem::path kDataDir = POLYTOPE_DATA_DIR;

double dist(const ESymbol4& a, const ESymbol4& b) {
    return std::max({std::abs(a.epsilon - b.epsilon), std::abs(a.delta - b.delta),
                     std::abs(a.eta - b.eta)});
}
}  // namespace

TEST_CASE("word parsing") {
    const Word w1 = parse_word("DCBA", Context::E3);
    REQUIRE(w1.size() == 4);
    CHECK(w1.letters[0].symbol == 'D');
    CHECK(w1.letters[3].symbol == 'A');
    CHECK(!w1.letters[0].inverted);

    const Word w2 = parse_word("aEGAdg", Context::E4);
    REQUIRE(w2.size() == 6);
    CHECK(w2.letters[0].symbol == 'A');
    CHECK(w2.letters[0].inverted);
    CHECK(w2.letters[1].symbol == 'E');
    CHECK(!w2.letters[1].inverted);
    CHECK(w2.letters[4].symbol == 'D');
    CHECK(w2.letters[4].inverted);
    CHECK(w2.letters[5].symbol == 'G');
    CHECK(w2.letters[5].inverted);

    const Word w3 = parse_word("ABE2F", Context::E4);
    REQUIRE(w3.size() == 5);
    CHECK(w3.letters[2].symbol == 'E');
    CHECK(w3.letters[3].symbol == 'E');
    CHECK(w3.letters[4].symbol == 'F');

    CHECK(parse_word("1", Context::E3).empty());
    CHECK(render(parse_word("1", Context::E4)) == "1");

    CHECK_THROWS_AS(parse_word("AXB", Context::E4), ParseError);
    CHECK_THROWS_AS(parse_word("E", Context::E3), ParseError);  // not in the 3-D alphabet
    CHECK_THROWS_AS(parse_word("", Context::E3), ParseError);
    CHECK_THROWS_AS(parse_word("2A", Context::E3), ParseError);
    try {
        parse_word("ABzC", Context::E4);
        FAIL("expected ParseError");
    } catch (const ParseError& ex) {
        CHECK(ex.position == 2);
    }

    // parse . render is the identity on canonical words
    for (const char* text : {"DCBA", "aEGAdg", "AEH", "B", "HGDDg"}) {
        const Word w = parse_word(text, Context::E4);
        CHECK(render(w) == text);
        const Word again = parse_word(render(w), Context::E4);
        CHECK(render(again) == text);
    }
}

TEST_CASE("word application") {
    const ESymbol3 start{0.3, 0.2};
    const ESymbol3 img = apply_word(parse_word("DCBA", Context::E3), start);
    CHECK_THAT(img.epsilon, WithinAbs(0.3, 1e-14));
    CHECK_THAT(img.delta, WithinAbs(0.2, 1e-14));

    CHECK(dist(apply_word(parse_word("EAH", Context::E4), ESymbol4{0.5, 0.25, 0.25}),
               {0.5, 0.25, 0.25}) < 1e-14);

    const ESymbol4 swapped = apply_word(parse_word("AH", Context::E4), ESymbol4{0.7, 0.33, 0.1});
    CHECK_THAT(swapped.epsilon, WithinAbs(0.1, 1e-13));
    CHECK_THAT(swapped.delta, WithinAbs(0.33, 1e-13));
    CHECK_THAT(swapped.eta, WithinAbs(0.7, 1e-13));

    // singular step index is reported
    try {
        apply_word(parse_word("BA", Context::E4), ESymbol4{0.3, 0.25, 1.0});
        FAIL("expected SingularTransform");
    } catch (const SingularTransform& ex) {
        CHECK(ex.step == 0);
    }
}

TEST_CASE("word matrices") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.05, 0.95);

    // single constant-matrix letter
    const Mat4 h = word_matrix(parse_word("H", Context::P4), {u(rng), u(rng), u(rng)});
    Mat4 expect;
    expect << -1, 0, 0, 0, -1, 0, 0, 1, -1, 0, 1, 0, -1, 1, 0, 0;
    CHECK((h - expect).cwiseAbs().maxCoeff() == 0.0);

    // sixfold vertex reflection at its eigenvector scales by -27
    const Word a6 = parse_word("A6", Context::P4);
    const Mat4 x6 = word_matrix(a6, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK((x6 + 27.0 * Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-7);

    // determinant multiplicativity along the chain
    for (int k = 0; k < 20; ++k) {
        const ESymbol4 e0{u(rng), u(rng), u(rng)};
        const Word w = parse_word("ABGe", Context::P4);
        double prod = 1.0;
        ESymbol4 e = e0;
        bool ok = true;
        try {
            for (std::size_t i = 0; i < w.letters.size(); ++i) {
                const Letter& l = w.letters[i];
                if (l.inverted) {
                    e = apply4_inverse(l.symbol, e);
                    prod *= matrix4_inverse(l.symbol, e).determinant();
                } else {
                    prod *= matrix4_forward(l.symbol, e).determinant();
                    e = apply4_forward(l.symbol, e);
                }
            }
        } catch (const SingularTransform&) {
            ok = false;
        }
        if (!ok) continue;
        const double det = word_matrix(w, e0).determinant();
        CHECK_THAT(det, WithinAbs(prod, 1e-9 * std::max(1.0, std::abs(prod))));
    }
}

TEST_CASE("periods") {
    CHECK(period(parse_word("A", Context::E3), 5, 10) == 5);
    CHECK(period(parse_word("AEH", Context::E4), 5, 16) == 10);
    CHECK(!period(parse_word("E", Context::E4), 5, 64).has_value());
    CHECK(period(parse_word("1", Context::E4), 3, 4) == 1);
}

TEST_CASE("relation suites from the data files") {
    SampleConfig cfg;
    cfg.tolerance = 1e-9;

    for (const auto& rep : verify_suite(Suite::RRP3, kDataDir, 100, cfg)) {
        INFO(rep.word_text << "^" << rep.exponent);
        CHECK(rep.pass);
        CHECK(rep.max_residual < 1e-9);
    }
    for (const auto& rep : verify_suite(Suite::RRP4, kDataDir, 100, cfg)) {
        INFO(rep.word_text << "^" << rep.exponent);
        CHECK(rep.pass);
        CHECK(rep.max_residual < 1e-9);
    }
    SampleConfig arp;
    arp.tolerance = 1e-8;
    for (const auto& rep : verify_suite(Suite::ARP4, kDataDir, 100, arp)) {
        INFO(rep.word_text << "^" << rep.exponent);
        CHECK(rep.pass);
        CHECK(rep.max_residual < 1e-8);
    }
}

TEST_CASE("isotropy membership") {
    const ESymbol4 cell16{0.25, 0.25, 0.5};
    CHECK(is_isotropy_member(parse_word("AAA", Context::E4), cell16).member);
    CHECK(is_isotropy_member(parse_word("B", Context::E4), cell16).member);
    CHECK(is_isotropy_member(parse_word("D", Context::E4), cell16).member);
    CHECK(!is_isotropy_member(parse_word("A", Context::E4), cell16).member);

    // a singular orbit reports non-membership with the flag set
    const IsotropyResult r =
        is_isotropy_member(parse_word("B", Context::E4), ESymbol4{0.3, 0.25, 1.0});
    CHECK(!r.member);
    CHECK(r.singular);
}

TEST_CASE("kernel elements act trivially on symbols but not on frames") {
    const struct {
        const char* word;
        int power;
    } kernel[] = {{"A", 6}, {"AE", 2}, {"AG", 4}, {"AH", 2}, {"BG", 2}, {"AECB", 1}};
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (const auto& k : kernel) {
        const Word we = repeat(parse_word(k.word, Context::E4), k.power);
        const Word wp = repeat(parse_word(k.word, Context::P4), k.power);
        int tested = 0;
        while (tested < 5) {
            const ESymbol4 e{u(rng), u(rng), u(rng)};
            try {
                CHECK(dist(apply_word(we, e), e) < 1e-9);
                const Mat4 x = word_matrix(wp, e);
                CHECK((x - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-6);
                ++tested;
            } catch (const SingularTransform&) {
            }
        }
    }
}

TEST_CASE("subgroup orders by fingerprint closure") {
    auto words3 = [](std::initializer_list<const char*> texts) {
        std::vector<Word> out;
        for (const char* t : texts) out.push_back(parse_word(t, Context::E3));
        return out;
    };
    auto words4 = [](std::initializer_list<const char*> texts) {
        std::vector<Word> out;
        for (const char* t : texts) out.push_back(parse_word(t, Context::E4));
        return out;
    };
    CHECK(subgroup_order(words3({"B", "C"})) == 6);     // symmetric group of degree 3
    CHECK(subgroup_order(words3({"A", "D"})) == 10);    // dihedral of order 10
    CHECK(subgroup_order(words3({"AC", "B"})) == 8);    // dihedral of order 8
    CHECK(subgroup_order(words3({"BC", "D"})) == 8);
    CHECK(subgroup_order(words4({"A", "H"})) == 12);    // dihedral of order 12
    CHECK(subgroup_order(words4({"B", "D"})) == 24);    // symmetric group of degree 4
    CHECK(subgroup_order(words4({"C", "D"})) == 24);
    CHECK(subgroup_order(words4({"AE", "H"})) == 20);  // dihedral of order 20
}

TEST_CASE("relation file loading") {
    const auto rels = suite_relations(Suite::RRP3, kDataDir);
    REQUIRE(rels.size() == 12);
    CHECK(render(rels[0].word) == "A");
    CHECK(rels[0].exponent == 5);
    CHECK_THROWS_AS(load_relations(kDataDir / "missing.txt", Context::E3), Error);
}
