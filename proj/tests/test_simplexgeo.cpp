#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "nnbox/error.hpp"
#include "nnbox/simplexgeo.hpp"

using namespace nnbox;

namespace {

RationalPoint pt(std::initializer_list<long long> coords) {
    RationalPoint p;
    for (long long c : coords) p.emplace_back(c);
    return p;
}

Simplex tri(RationalPoint a, RationalPoint b, RationalPoint c) { return Simplex({std::move(a), std::move(b), std::move(c)}); }

std::string row(const Hyperplane& h) { return h.to_row(); }

std::vector<Simplex> shared_edge_triangles() {
    return {tri(pt({0, 0}), pt({1, 0}), pt({0, 1})), tri(pt({0, 0}), pt({1, 0}), pt({0, -1}))};
}

}  // namespace

TEST_CASE("facet hyperplanes of a segment") {
    const auto hs = facet_hyperplanes(Simplex({pt({0}), pt({1})}));
    REQUIRE(hs.size() == 2);
    CHECK(row(hs[0]) == "1 1");  // omits vertex 0: x = 1
    CHECK(row(hs[1]) == "1 0");
}

TEST_CASE("facet hyperplanes of the unit triangle") {
    const auto hs = facet_hyperplanes(tri(pt({0, 0}), pt({1, 0}), pt({0, 1})));
    REQUIRE(hs.size() == 3);
    CHECK(row(hs[0]) == "1 1 1");  // x + y = 1
    CHECK(row(hs[1]) == "1 0 0");  // x = 0
    CHECK(row(hs[2]) == "0 1 0");  // y = 0
}

TEST_CASE("degenerate simplices are rejected") {
    CHECK_THROWS_AS(tri(pt({0, 0}), pt({1, 1}), pt({2, 2})), GuardError);
    CHECK_THROWS_AS(Simplex({pt({0, 0}), pt({1, 0})}), GuardError);
    CHECK_THROWS_AS(Simplex({pt({1}), pt({1})}), GuardError);
}

TEST_CASE("canonical form") {
    const Hyperplane h = Hyperplane::canonical({Rational(-2, 3), Rational(4, 3)}, Rational(-2));
    CHECK(row(h) == "1 -2 3");
    CHECK(Hyperplane::canonical({Rational(1), Rational(-2)}, Rational(3)) == h);
    // Idempotent on canonical input.
    std::vector<Rational> normal(h.normal.begin(), h.normal.end());
    CHECK(Hyperplane::canonical(normal, Rational(h.offset)) == h);
    CHECK_THROWS_AS(Hyperplane::canonical({Rational(0), Rational(0)}, Rational(1)), GuardError);
    CHECK(Hyperplane::canonical({Rational(0), Rational(-5)}, Rational(10)).to_row() == "0 1 -2");
}

TEST_CASE("facet hyperplanes contain exactly d vertices") {
    std::mt19937_64 rng(53);
    int checked = 0;
    while (checked < 100) {
        const std::size_t d = 1 + rng() % 4;
        std::vector<RationalPoint> vs;
        for (std::size_t i = 0; i <= d; ++i) {
            RationalPoint p;
            for (std::size_t c = 0; c < d; ++c) p.emplace_back(static_cast<long long>(rng() % 11) - 5, 1 + rng() % 3);
            vs.push_back(std::move(p));
        }
        std::optional<Simplex> s;
        try {
            s.emplace(vs);
        } catch (const GuardError&) {
            continue;
        }
        const auto hs = facet_hyperplanes(*s);
        CHECK(hs.size() == d + 1);
        auto sorted = hs;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        for (std::size_t i = 0; i < hs.size(); ++i) {
            for (std::size_t v = 0; v < vs.size(); ++v) {
                if (v == i) {
                    CHECK(hs[i].side(vs[v]) != 0);
                } else {
                    CHECK(hs[i].side(vs[v]) == 0);
                }
            }
        }
        ++checked;
    }
}

TEST_CASE("nearly neighbourly: shared edge") {
    const NeighbourlyReport r = check_nearly_neighbourly(shared_edge_triangles());
    CHECK(r.nearly_neighbourly);
    REQUIRE(r.pairs.size() == 1);
    REQUIRE(r.pairs[0].witness.has_value());
    CHECK(row(*r.pairs[0].witness) == "0 1 0");
}

TEST_CASE("nearly neighbourly: far apart triangles") {
    const std::vector<Simplex> far{tri(pt({0, 0}), pt({1, 0}), pt({0, 1})), tri(pt({10, 10}), pt({12, 10}), pt({10, 13}))};
    const NeighbourlyReport r = check_nearly_neighbourly(far);
    CHECK_FALSE(r.nearly_neighbourly);
    CHECK_FALSE(r.pairs[0].witness.has_value());
    CHECK_THROWS_AS(encode_boxes(far), VerificationError);
}

TEST_CASE("nearly neighbourly: same side of a common facet plane") {
    // Both triangles have a facet on y = 0 and lie above it.
    const std::vector<Simplex> same{tri(pt({0, 0}), pt({1, 0}), pt({0, 1})), tri(pt({2, 0}), pt({3, 0}), pt({2, 1}))};
    CHECK_FALSE(check_nearly_neighbourly(same).nearly_neighbourly);
}

TEST_CASE("nearly neighbourly: single simplex and mixed dimensions") {
    CHECK(check_nearly_neighbourly({tri(pt({0, 0}), pt({1, 0}), pt({0, 1}))}).nearly_neighbourly);
    CHECK_THROWS_AS(check_nearly_neighbourly({tri(pt({0, 0}), pt({1, 0}), pt({0, 1})), Simplex({pt({0}), pt({1})})}),
                    GuardError);
}

TEST_CASE("encode the shared-edge triangles") {
    const EncodingResult r = encode_boxes(shared_edge_triangles());
    // x = 0 and y = 0 carry facets of both triangles, so four planes remain.
    REQUIRE(r.hyperplanes.size() == 4);
    CHECK(row(r.hyperplanes[0]) == "0 1 0");
    CHECK(row(r.hyperplanes[1]) == "1 -1 1");
    CHECK(row(r.hyperplanes[2]) == "1 0 0");
    CHECK(row(r.hyperplanes[3]) == "1 1 1");
    CHECK(r.family.k == 3);
    CHECK(r.family.n == 4);
    CHECK(r.family.boxes[0].to_word() == "1*10");
    CHECK(r.family.boxes[1].to_word() == "001*");
    CHECK(verify_family(r.family).ok());
    REQUIRE(r.pair_witnesses.size() == 1);
    const auto& w = r.pair_witnesses[0];
    CHECK(w.hyperplane == 0);
    CHECK(r.family.boxes[0].value(w.hyperplane) != r.family.boxes[1].value(w.hyperplane));
}

TEST_CASE("encode segments in d = 1") {
    const EncodingResult one = encode_boxes({Simplex({pt({0}), pt({1})})});
    CHECK(one.family.n == 2);
    CHECK(one.family.k == 2);
    CHECK(one.family.boxes[0].to_word() == "10");

    const EncodingResult two = encode_boxes({Simplex({pt({0}), pt({1})}), Simplex({pt({1}), pt({2})})});
    CHECK(two.family.n == 3);
    CHECK(two.family.boxes[0].to_word() == "10*");
    CHECK(two.family.boxes[1].to_word() == "*10");
    CHECK(two.family.size() == 2);
    CHECK(verify_family(two.family).ok());
    REQUIRE(two.pair_witnesses.size() == 1);
    CHECK(two.pair_witnesses[0].hyperplane == 1);
}

TEST_CASE("relabeling permutes boxes and keeps hyperplanes") {
    // Three triangles fanned around the origin are pairwise separated by a
    // shared edge line or by a coordinate axis.
    std::vector<Simplex> fam{tri(pt({0, 0}), pt({1, 0}), pt({0, 1})), tri(pt({0, 0}), pt({1, 0}), pt({0, -1})),
                             tri(pt({0, 0}), pt({-1, 0}), pt({0, -1}))};
    const EncodingResult a = encode_boxes(fam);
    std::vector<Simplex> rev(fam.rbegin(), fam.rend());
    const EncodingResult b = encode_boxes(rev);
    CHECK(a.hyperplanes == b.hyperplanes);
    for (std::size_t i = 0; i < fam.size(); ++i) CHECK(a.family.boxes[i] == b.family.boxes[fam.size() - 1 - i]);
    CHECK(verify_family(a.family).ok());
}

TEST_CASE("rational arithmetic stays exact") {
    const Simplex s({{Rational(1, 3), Rational(0)}, {Rational(2, 3), Rational(0)}, {Rational(1, 3), Rational(1, 7)}});
    const auto hs = facet_hyperplanes(s);
    CHECK(row(hs[0]) == "3 7 2");
    CHECK(row(hs[1]) == "3 0 1");  // x = 1/3
    CHECK(row(hs[2]) == "0 1 0");
}

TEST_CASE("simplex file format") {
    const auto tris = parse_simplices(testing_fixtures::read("triangles.simplices"));
    REQUIRE(tris.size() == 2);
    CHECK(tris[1].vertices()[2][1] == -1);

    const auto segs = parse_simplices(testing_fixtures::read("segments.simplices"));
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].dimension() == 1);

    const auto frac = parse_simplices("1/2 0\n1 0\n# comment inside a block\n1/2 -3/4\r\n");
    REQUIRE(frac.size() == 1);
    CHECK(frac[0].vertices()[2][1] == Rational(-3, 4));

    CHECK_THROWS_AS(parse_simplices("0 0\n1 0\n\n"), FormatError);
    CHECK_THROWS_AS(parse_simplices("0 0\n1 0\n0 1\n1 1\n"), FormatError);
    CHECK_THROWS_AS(parse_simplices("0 0\n1 x\n0 1\n"), FormatError);
    CHECK_THROWS_AS(parse_simplices("0 0\n1 1/0\n0 1\n"), FormatError);
    CHECK_THROWS_AS(parse_simplices("0 0\n1 1\n2 2\n"), FormatError);
    CHECK_THROWS_AS(parse_simplices("# d=2\n0\n1\n"), FormatError);
}
