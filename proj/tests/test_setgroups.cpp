#include <doctest.h>

#include <random>
#include <set>

#include "nnbox/error.hpp"
#include "nnbox/setgroups.hpp"

using namespace nnbox;

namespace {

SetFamily fam(std::size_t n, std::vector<std::vector<std::size_t>> lists) { return SetFamily::from_lists(n, lists); }

std::vector<std::vector<std::size_t>> lists_of(const SetFamily& f) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : f.sets()) {
        std::vector<std::size_t> l;
        for (std::size_t e = s.find_first(); e < s.size(); e = s.find_next(e)) l.push_back(e + 1);
        out.push_back(l);
    }
    return out;
}

// Closure by materializing every pairwise symmetric difference.
bool brute_closed(const SetFamily& f) {
    std::set<std::vector<std::size_t>> members;
    for (const auto& l : lists_of(f)) members.insert(l);
    for (const auto& a : f.sets())
        for (const auto& b : f.sets()) {
            std::vector<std::size_t> d;
            const BitSet x = a ^ b;
            for (std::size_t e = x.find_first(); e < x.size(); e = x.find_next(e)) d.push_back(e + 1);
            if (!members.count(d)) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("two_adic_order") {
    CHECK(two_adic_order(4) == 2);
    CHECK(two_adic_order(6) == 1);
    CHECK(two_adic_order(1) == 0);
    CHECK(two_adic_order(96) == 5);
    CHECK_THROWS_AS(two_adic_order(0), GuardError);
}

TEST_CASE("check_group on G_1") {
    const GroupReport r = check_group(fam(3, {{}, {1, 2}, {1, 3}, {2, 3}}));
    CHECK(r.is_group);
    REQUIRE(r.uniform_k.has_value());
    CHECK(*r.uniform_k == 2);
    CHECK(r.v == 1);
    CHECK(r.bound == 4);
    CHECK(r.size == 4);
    CHECK(r.bound_ok);
    CHECK(r.half_intersections_ok);
}

TEST_CASE("check_group on G_0") {
    const GroupReport r = check_group(fam(1, {{}, {1}}));
    CHECK(r.is_group);
    CHECK(*r.uniform_k == 1);
    CHECK(r.v == 0);
    CHECK(r.bound == 2);
    CHECK(r.bound_ok);
    CHECK(r.half_intersections_ok);
}

TEST_CASE("check_group on a non-group") {
    const GroupReport r = check_group(fam(3, {{1, 2}, {2, 3}}));
    CHECK_FALSE(r.is_group);
    CHECK_FALSE(r.contains_empty);
    CHECK_FALSE(r.closed);
    REQUIRE(r.closure_witness.has_value());
    CHECK(*r.closure_witness == std::make_pair(std::size_t{0}, std::size_t{0}));
}

TEST_CASE("non-uniform family") {
    const GroupReport r = check_group(fam(3, {{}, {1}, {2, 3}, {1, 2, 3}}));
    CHECK(r.is_group);
    CHECK_FALSE(r.uniform_k.has_value());
    CHECK_FALSE(r.half_intersections_ok);
}

TEST_CASE("duplicates are rejected") { CHECK_THROWS_AS(fam(2, {{1}, {1}}), GuardError); }

TEST_CASE("generate G_0, G_1, G_2") {
    CHECK(lists_of(generate_group(0)) == std::vector<std::vector<std::size_t>>{{}, {1}});
    CHECK(lists_of(generate_group(1)) == std::vector<std::vector<std::size_t>>{{}, {1, 2}, {1, 3}, {2, 3}});

    const SetFamily g2 = generate_group(2);
    CHECK(g2.ground_size() == 7);
    CHECK(g2.size() == 8);
    // Frozen from running the recursion by hand: A# for A in G_1', their
    // complements in K = {4,5,6,7}, and K itself.
    CHECK(lists_of(g2) == std::vector<std::vector<std::size_t>>{
                              {}, {1, 2, 4, 5}, {1, 2, 6, 7}, {1, 3, 4, 6}, {1, 3, 5, 7}, {2, 3, 4, 7}, {2, 3, 5, 6}, {4, 5, 6, 7}});
    const GroupReport r = check_group(g2);
    CHECK(r.is_group);
    CHECK(*r.uniform_k == 4);
    CHECK(r.bound_ok);
}

TEST_CASE("generated groups attain the bound") {
    for (std::size_t v = 0; v <= 8; ++v) {
        const SetFamily g = generate_group(v);
        const GroupReport r = check_group(g);
        CHECK(r.is_group);
        CHECK(g.size() == (std::size_t{2} << v));
        CHECK(*r.uniform_k == (std::size_t{1} << v));
        CHECK(r.bound == g.size());
        CHECK(r.bound_ok);
        CHECK(r.half_intersections_ok);
        BitSet all(g.ground_size());
        for (const auto& s : g.sets()) all |= s;
        CHECK(all.find_last() + 1 == (std::size_t{2} << v) - 1);
    }
    CHECK_THROWS_AS(generate_group(kMaxGroupOrder + 1), GuardError);
}

TEST_CASE("preimage groups") {
    CHECK(lists_of(preimage_group(0, 1)) == lists_of(generate_group(0)));
    CHECK(lists_of(preimage_group(2, 1)) == lists_of(generate_group(2)));

    const SetFamily g = preimage_group(1, 3);
    CHECK(g.ground_size() == 9);
    CHECK(lists_of(g) == std::vector<std::vector<std::size_t>>{
                             {}, {1, 2, 3, 4, 5, 6}, {1, 2, 3, 7, 8, 9}, {4, 5, 6, 7, 8, 9}});
    const GroupReport r = check_group(g);
    CHECK(r.is_group);
    CHECK(*r.uniform_k == 6);
    CHECK(r.v == 1);
    CHECK(r.size == r.bound);

    CHECK_THROWS_AS(preimage_group(1, 2), GuardError);
    CHECK_THROWS_AS(preimage_group(1, 0), GuardError);
}

TEST_CASE("preimages scale member sizes by p") {
    for (std::size_t v = 0; v <= 4; ++v) {
        for (std::size_t p : {1, 3, 5, 7}) {
            const SetFamily base = generate_group(v);
            const SetFamily g = preimage_group(v, p);
            REQUIRE(g.size() == base.size());
            CHECK(g.ground_size() == 2 * (p << v) - p);
            for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.sets()[i].count() == p * base.sets()[i].count());
            const GroupReport r = check_group(g);
            CHECK(r.is_group);
            CHECK(r.size == r.bound);
        }
    }
}

TEST_CASE("closure agrees with the brute-force oracle and perturbed groups keep the implications") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t v = rng() % 5;
        const SetFamily g = generate_group(v);
        std::vector<BitSet> sets = g.sets();
        // Perturb: drop members and/or toggle elements.
        const int action = static_cast<int>(rng() % 3);
        if (action >= 1 && sets.size() > 1) sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(rng() % sets.size()));
        if (action == 2) {
            BitSet& s = sets[rng() % sets.size()];
            const std::size_t e = rng() % s.size();
            s.set(e, !s.test(e));
        }
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        const SetFamily f(g.ground_size(), sets);
        const GroupReport r = check_group(f);
        CHECK(r.closed == brute_closed(f));
        std::size_t nonempty = 0;
        for (const auto& s : sets) nonempty += s.any();
        if (r.is_group && r.uniform_k && nonempty >= 2) {
            CHECK(*r.uniform_k % 2 == 0);
            CHECK(r.half_intersections_ok);
            CHECK(r.bound_ok);
        }
    }
}

TEST_CASE("set family text format") {
    const SetFamily g = generate_group(1);
    const std::string text = serialize_sets(g);
    CHECK(text == "# n=3\n{}\n1,2\n1,3\n2,3\n");
    CHECK(lists_of(parse_sets(text)) == lists_of(g));
    CHECK(parse_sets("1,2\n{}\n").ground_size() == 2);
    CHECK_THROWS_AS(parse_sets("1,x\n"), FormatError);
    CHECK_THROWS_AS(parse_sets("2,1\n"), FormatError);
    CHECK_THROWS_AS(parse_sets("1\n1\n"), FormatError);
    CHECK_THROWS_AS(parse_sets("# n=2\n1,3\n"), FormatError);
}
