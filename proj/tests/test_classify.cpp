#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "symchaos/classify.hpp"
#include "symchaos/construct.hpp"
#include "symchaos/corpus.hpp"
#include "symchaos/errors.hpp"
#include "symchaos/witness.hpp"

using namespace symchaos;

namespace {

std::string rule_for(const ChaosReport& r, const std::string& flag) {
    for (const auto& [f, rule] : r.provenance)
        if (f == flag) return rule;
    return {};
}

}  // namespace

TEST_CASE("aperiodic shifts with fixed points earn every verdict") {
    for (const Sft& X : {fixtures::full2(), fixtures::golden()}) {
        const auto r = classify(X, 6);
        CHECK_FALSE(r.finite);
        CHECK(r.period == 1);
        CHECK(r.transitive == Verdict::Yes);
        CHECK(r.totally_transitive == Verdict::Yes);
        CHECK(r.weakly_mixing == Verdict::Yes);
        CHECK(r.devaney == Verdict::Yes);
        CHECK(r.densely_uniformly_chaotic == Verdict::Yes);
        CHECK(r.uniformly_chaotic == Verdict::Yes);
        CHECK(r.strong_liyorke == Verdict::Yes);
        CHECK(r.liyorke == Verdict::Yes);
        CHECK(implication_audit(r).empty());
        // cheapest rule first: the fixed point shortcut beats the mixing route
        CHECK(rule_for(r, "densely_uniformly_chaotic") == "transitive with a fixed point");
        CHECK_FALSE(r.decomposition.has_value());
    }
}

TEST_CASE("finite shifts are denied every chaos flag") {
    const auto r = classify(fixtures::cycle(2), 6);
    CHECK(r.finite);
    CHECK(r.transitive == Verdict::Yes);
    CHECK(r.totally_transitive == Verdict::No);
    for (Verdict v : {r.weakly_mixing, r.devaney, r.densely_uniformly_chaotic,
                      r.uniformly_chaotic, r.strong_liyorke, r.liyorke})
        CHECK(v == Verdict::No);
    CHECK(rule_for(r, "liyorke") == "finite shift");
    CHECK(implication_audit(r).empty());

    const auto s = classify(fixtures::two_fixed_points(), 6);
    CHECK(s.finite);
    CHECK(s.transitive == Verdict::No);
    CHECK(implication_audit(s).empty());
}

TEST_CASE("non-transitive infinite shifts stay honestly unknown downstream") {
    const auto r = classify(fixtures::golden_plus_island(), 6);
    CHECK_FALSE(r.finite);
    CHECK(r.transitive == Verdict::No);
    CHECK(r.totally_transitive == Verdict::No);
    CHECK(r.weakly_mixing == Verdict::No);
    CHECK(r.devaney == Verdict::No);
    CHECK(r.densely_uniformly_chaotic == Verdict::Unknown);
    CHECK(r.uniformly_chaotic == Verdict::Unknown);
    CHECK(r.strong_liyorke == Verdict::Unknown);
    CHECK(r.liyorke == Verdict::Unknown);
    CHECK(implication_audit(r).empty());
}

TEST_CASE("periodic transitive shifts go through the cyclic decomposition") {
    const auto r = classify(fixtures::blocky2(), 6);
    CHECK_FALSE(r.finite);
    CHECK(r.period == 2);
    CHECK(r.transitive == Verdict::Yes);
    CHECK(r.totally_transitive == Verdict::No);
    CHECK(r.weakly_mixing == Verdict::No);
    CHECK(r.devaney == Verdict::Yes);
    // the sufficient conditions are silent here; the flag must stay open
    CHECK(r.densely_uniformly_chaotic == Verdict::Unknown);
    CHECK(r.uniformly_chaotic == Verdict::Yes);
    CHECK(rule_for(r, "uniformly_chaotic") ==
          "cyclic decomposition with a densely uniformly chaotic power component");
    CHECK(r.strong_liyorke == Verdict::Yes);
    CHECK(r.liyorke == Verdict::Yes);
    CHECK(implication_audit(r).empty());

    REQUIRE(r.decomposition.has_value());
    const auto& dec = *r.decomposition;
    CHECK(dec.d == 2);
    CHECK(dec.x0_transitive == Verdict::Yes);
    CHECK(dec.x0_has_fixed_point == Verdict::Yes);
    CHECK(dec.x0_densely_uniformly_chaotic == Verdict::Yes);
    CHECK(dec.x0.alphabet_size() == 4);  // the four two-step blocks
    CHECK(decomposition_covers(fixtures::blocky2(), dec, 12));
}

TEST_CASE("decomposition of a single orbit is degenerate but exact") {
    const auto dec = decompose_periodic(fixtures::cycle(3));
    REQUIRE(dec.has_value());
    CHECK(dec->d == 3);
    CHECK(dec->block_words == std::vector<Word>{Word{0, 1, 2}});
    CHECK(dec->x0.vertex_count() == 1);
    CHECK(dec->x0_transitive == Verdict::Yes);
    CHECK(dec->x0_has_fixed_point == Verdict::Yes);  // the single block loops
    CHECK(dec->x0_densely_uniformly_chaotic == Verdict::No);  // finite component
    CHECK(decomposition_covers(fixtures::cycle(3), *dec, 9));
}

TEST_CASE("decomposition does not apply without transitive periodicity") {
    CHECK_FALSE(decompose_periodic(fixtures::golden()).has_value());
    CHECK_FALSE(decompose_periodic(fixtures::full2()).has_value());
    CHECK_FALSE(decompose_periodic(fixtures::two_fixed_points()).has_value());
}

TEST_CASE("decomposition block expansions rebuild the language exactly") {
    for (const auto& widths :
         {std::vector<size_t>{2, 2}, std::vector<size_t>{2, 1, 2}, std::vector<size_t>{3, 2}}) {
        const Sft X = fixtures::cyclic_classes(widths);
        const auto dec = decompose_periodic(X);
        REQUIRE(dec.has_value());
        CHECK(dec->d == widths.size());
        CHECK(dec->x0_transitive == Verdict::Yes);
        CHECK(dec->x0_has_fixed_point == Verdict::Yes);
        CHECK(decomposition_covers(X, *dec, 10));
        // truncating the check length must not matter
        CHECK(decomposition_covers(X, *dec, 5));
    }
}

TEST_CASE("non-surjective presentations are rejected with an explanation") {
    CHECK_THROWS_AS(classify(fixtures::not_surjective(), 6), NotSurjectiveError);
}

TEST_CASE("forged reports violate the implication audit") {
    ChaosReport forged;
    forged.weakly_mixing = Verdict::Yes;
    forged.liyorke = Verdict::No;
    const auto bad = implication_audit(forged);
    CHECK_FALSE(bad.empty());

    ChaosReport forged2;
    forged2.devaney = Verdict::Yes;
    forged2.uniformly_chaotic = Verdict::No;
    CHECK_FALSE(implication_audit(forged2).empty());

    ChaosReport forged3;
    forged3.weakly_mixing = Verdict::Yes;
    forged3.totally_transitive = Verdict::No;
    CHECK_FALSE(implication_audit(forged3).empty());

    ChaosReport open;
    CHECK(implication_audit(open).empty());  // unknowns are always consistent
}

TEST_CASE("positive verdicts are backed by the constructive modules") {
    std::vector<Sft> shifts = {fixtures::golden(), fixtures::full2(), fixtures::full3()};
    std::mt19937_64 rng(13);
    int added = 0;
    while (added < 6) {
        const Sft X = random_sft(rng, 4, 5);
        if (!X.surjective() || is_finite_shift(X) || !is_transitive(X)) continue;
        shifts.push_back(X);
        ++added;
    }
    for (const Sft& X : shifts) {
        const auto r = classify(X, 6);
        CHECK(implication_audit(r).empty());
        if (r.densely_uniformly_chaotic != Verdict::Yes) continue;
        const auto cert = build_stages(X, 3, {.proximal = true});
        CHECK(verify_certificate(X, cert).pass);
        const auto w = make_scrambled_pair(X, 6, Dyadic::pow2(1), 1024);
        CHECK_FALSE(point_equal(w.x, w.y));
        Dyadic best = Dyadic::one();
        for (const auto& [t, d] : w.prox_times) best = std::min(best, d);
        CHECK(best < Dyadic::pow2(6));
    }
}

TEST_CASE("every classified corpus report passes the audit") {
    std::mt19937_64 rng(2024);
    int classified = 0, skipped = 0;
    while (classified + skipped < 60) {
        const Sft X = random_sft(rng, 4, 6);
        if (!X.surjective()) {
            ++skipped;
            continue;
        }
        const auto r = classify(X, 4);
        CHECK(implication_audit(r).empty());
        CHECK((r.transitive == Verdict::Yes) == is_transitive(X));
        CHECK(r.finite == is_finite_shift(X));
        ++classified;
    }
    CHECK(classified >= 30);
}

TEST_CASE("classification is deterministic") {
    const auto a = classify(fixtures::blocky2(), 6);
    const auto b = classify(fixtures::blocky2(), 6);
    CHECK(a.provenance == b.provenance);
    CHECK(a.uniformly_chaotic == b.uniformly_chaotic);
    REQUIRE(a.decomposition.has_value());
    REQUIRE(b.decomposition.has_value());
    CHECK(a.decomposition->block_words == b.decomposition->block_words);
}
