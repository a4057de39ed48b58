#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "symchaos/ellis.hpp"
#include "symchaos/errors.hpp"

using namespace symchaos;

namespace {

// All k^k self-maps on {0..k-1} in lexicographic order.
std::vector<FiniteDynSys> all_maps(uint32_t k) {
    std::vector<FiniteDynSys> out;
    std::vector<uint32_t> m(k, 0);
    while (true) {
        out.push_back(FiniteDynSys{m});
        size_t i = k;
        while (i > 0 && m[i - 1] + 1 == k) m[--i] = 0;
        if (i == 0) break;
        ++m[i - 1];
    }
    return out;
}

int find_element(const EnvMonoid& env, const std::vector<uint32_t>& fn) {
    for (size_t i = 0; i < env.elements.size(); ++i)
        if (env.elements[i] == fn) return int(i);
    return -1;
}

}  // namespace

TEST_CASE("iterate monoid of a merge-then-swap map") {
    // 0->1, 1->2, 2->1: T^2 fixes {1,2} pointwise-swapped, T^3 = T
    const FiniteDynSys sys{{1, 2, 1}};
    CHECK_FALSE(sys.surjective());
    const EnvMonoid env = enveloping(sys);
    CHECK(env.elements.size() == 2);
    CHECK(env.preperiod == 1);
    CHECK(env.period == 2);
    CHECK_FALSE(env.has_identity);

    const int t = find_element(env, {1, 2, 1});
    const int t2 = find_element(env, {2, 1, 2});
    REQUIRE(t >= 0);
    REQUIRE(t2 >= 0);
    CHECK(env.table[t][t] == uint32_t(t2));    // T o T = T^2
    CHECK(env.table[t2][t2] == uint32_t(t2));  // T^2 idempotent
    CHECK(env.table[t][t2] == uint32_t(t));    // T^3 = T
    CHECK(env.table[t2][t] == uint32_t(t));
    CHECK(env.index_of_power(1) == uint32_t(t));
    CHECK(env.index_of_power(2) == uint32_t(t2));
    CHECK(env.index_of_power(3) == uint32_t(t));
    CHECK(env.index_of_power(1000000000000ull) == uint32_t(t2));

    const auto adh = adherence(env);
    CHECK(adh.size() == 2);  // preperiod 1: every iterate recurs

    const auto ideals = ideal_structure(env);
    REQUIRE(ideals.minimal_ideals.size() == 1);
    CHECK(ideals.minimal_ideals[0] == std::vector<uint32_t>{0, 1});
    REQUIRE(ideals.idempotents[0].size() == 1);
    CHECK(ideals.idempotents[0][0] == uint32_t(t2));
    REQUIRE(ideals.groups[0].size() == 1);
    CHECK(ideals.groups[0][0].members.size() == 2);  // a 2-element group

    const auto pairs = proximal_pairs(sys, env, ideals);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].x == 0);
    CHECK(pairs[0].y == 2);
    CHECK(pairs[0].ideal_uniform);
    CHECK(env.elements[pairs[0].equalizer][0] == env.elements[pairs[0].equalizer][2]);

    CHECK(proximal_cell(sys, env, 0) == std::vector<uint32_t>{0, 2});
    CHECK(proximal_cell(sys, env, 1) == std::vector<uint32_t>{1});

    CHECK(verify_semigroup_laws(sys, env).pass());
}

TEST_CASE("a map with a constant tail collapses to one idempotent") {
    // 0->1, 1->2, 2->2: T^2 is the constant-2 map and T^3 = T^2
    const FiniteDynSys sys{{1, 2, 2}};
    const EnvMonoid env = enveloping(sys);
    CHECK(env.elements.size() == 2);
    CHECK(env.preperiod == 2);
    CHECK(env.period == 1);

    const int t2 = find_element(env, {2, 2, 2});
    REQUIRE(t2 >= 0);
    const auto adh = adherence(env);
    CHECK(adh == std::vector<uint32_t>{uint32_t(t2)});

    const auto ideals = ideal_structure(env);
    REQUIRE(ideals.minimal_ideals.size() == 1);
    CHECK(ideals.minimal_ideals[0] == std::vector<uint32_t>{uint32_t(t2)});

    const auto pairs = proximal_pairs(sys, env, ideals);
    CHECK(pairs.size() == 3);  // all pairs merge through the constant map
    CHECK(proximal_cell(sys, env, 0) == std::vector<uint32_t>{0, 1, 2});
    CHECK(verify_semigroup_laws(sys, env).pass());
}

TEST_CASE("a cyclic permutation generates a group with no proximality") {
    const FiniteDynSys sys{{1, 2, 0}};
    CHECK(sys.surjective());
    const EnvMonoid env = enveloping(sys);
    CHECK(env.elements.size() == 3);
    CHECK(env.period == 3);
    const int id = find_element(env, {0, 1, 2});
    CHECK(id >= 0);  // T^3 = identity arises as an iterate

    const auto ideals = ideal_structure(env);
    REQUIRE(ideals.minimal_ideals.size() == 1);
    CHECK(ideals.minimal_ideals[0].size() == 3);
    CHECK(ideals.idempotents[0] == std::vector<uint32_t>{uint32_t(id)});
    CHECK(ideals.groups[0][0].members.size() == 3);

    CHECK(proximal_pairs(sys, env, ideals).empty());
    for (uint32_t x = 0; x < 3; ++x)
        CHECK(proximal_cell(sys, env, x) == std::vector<uint32_t>{x});
    CHECK(verify_semigroup_laws(sys, env).pass());
}

TEST_CASE("the identity map yields the trivial monoid") {
    const FiniteDynSys sys{{0, 1, 2, 3}};
    const EnvMonoid env = enveloping(sys);
    CHECK(env.elements.size() == 1);
    CHECK(env.elements[0] == std::vector<uint32_t>{0, 1, 2, 3});
    CHECK(verify_semigroup_laws(sys, env).pass());
}

TEST_CASE("adjoining the identity keeps the laws and adds power zero") {
    const FiniteDynSys sys{{1, 2, 1}};
    const EnvMonoid env = enveloping(sys, true);
    CHECK(env.has_identity);
    CHECK(env.elements.size() == 3);
    CHECK(env.power[0] == 0);
    CHECK(env.elements[0] == std::vector<uint32_t>{0, 1, 2});
    for (size_t i = 0; i < env.elements.size(); ++i) {
        CHECK(env.table[0][i] == i);
        CHECK(env.table[i][0] == i);
    }
    CHECK(verify_semigroup_laws(sys, env).pass());
}

TEST_CASE("malformed systems are rejected") {
    CHECK_THROWS_AS(enveloping(FiniteDynSys{{}}), HypothesisError);
    CHECK_THROWS_AS(enveloping(FiniteDynSys{{2, 0}}), ParseError);
}

TEST_CASE("laws hold exhaustively below five points") {
    const auto rep = sweep_law_check(4);
    CHECK(rep.systems == 288);  // 4^4 + 3^3 + 2^2 + 1
    CHECK(rep.violations == 0);
    CHECK(rep.first_failures.empty());
}

TEST_CASE("semigroup proximality coincides with orbit merging") {
    for (uint32_t k = 2; k <= 4; ++k)
        for (const auto& sys : all_maps(k)) {
            const EnvMonoid env = enveloping(sys);
            const auto ideals = ideal_structure(env);
            std::set<std::pair<uint32_t, uint32_t>> from_semigroup;
            for (const auto& p : proximal_pairs(sys, env, ideals))
                from_semigroup.emplace(p.x, p.y);
            for (uint32_t x = 0; x < k; ++x)
                for (uint32_t y = x + 1; y < k; ++y)
                    CHECK(from_semigroup.count({x, y}) ==
                          size_t(oracle::orbits_merge(sys.map, x, y)));
        }
}

TEST_CASE("every subsemigroup of every small iterate monoid has an idempotent") {
    for (uint32_t k = 1; k <= 4; ++k)
        for (const auto& sys : all_maps(k)) {
            const EnvMonoid env = enveloping(sys);
            REQUIRE(env.elements.size() <= 7);
            CHECK(oracle::subsemigroups_have_idempotents(env.table));
        }
}

TEST_CASE("the adherence part is a left ideal equal to the kernel") {
    for (uint32_t k = 1; k <= 4; ++k)
        for (const auto& sys : all_maps(k)) {
            const EnvMonoid env = enveloping(sys);
            const auto adh = adherence(env);
            const std::set<uint32_t> a(adh.begin(), adh.end());
            for (size_t p = 0; p < env.elements.size(); ++p)
                for (uint32_t q : adh) CHECK(a.count(env.table[p][q]) == 1);
            if (a.size() == env.period) {
                const auto ideals = ideal_structure(env);
                std::set<uint32_t> kernel;
                for (const auto& ideal : ideals.minimal_ideals)
                    kernel.insert(ideal.begin(), ideal.end());
                CHECK(kernel == a);
            }
        }
}

TEST_CASE("permutations are distal and their monoid is a group") {
    for (const auto& sys : all_maps(4)) {
        if (!sys.surjective()) continue;
        const EnvMonoid env = enveloping(sys);
        for (const auto& el : env.elements) {
            std::set<uint32_t> image(el.begin(), el.end());
            CHECK(image.size() == sys.size());  // bijections throughout
        }
        const auto ideals = ideal_structure(env);
        CHECK(proximal_pairs(sys, env, ideals).empty());
        REQUIRE(ideals.minimal_ideals.size() == 1);
        CHECK(ideals.minimal_ideals[0].size() == env.elements.size());
    }
}

TEST_CASE("law reports expose the component checks") {
    const FiniteDynSys sys{{1, 2, 1}};
    const auto rep = verify_semigroup_laws(sys, enveloping(sys));
    CHECK(rep.idempotent_exists);
    CHECK(rep.absorbing_right);
    CHECK(rep.coset_groups);
    CHECK(rep.coset_isomorphism);
    CHECK(rep.partition);
    CHECK(rep.pairing);
    CHECK(rep.prox_forms_agree);
    CHECK(rep.prox_cell_minimal);
    CHECK(rep.violations.empty());
}
