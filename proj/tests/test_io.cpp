#include <doctest.h>

#include <json.hpp>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "symchaos/classify.hpp"
#include "symchaos/corpus.hpp"
#include "symchaos/dot.hpp"
#include "symchaos/ellis.hpp"
#include "symchaos/errors.hpp"
#include "symchaos/json_io.hpp"
#include "symchaos/product.hpp"
#include "symchaos/version.hpp"
#include "symchaos/witness.hpp"

using namespace symchaos;
using nlohmann::json;

namespace {

const RunMeta kMeta{std::string(kVersion), 7, "00000000deadbeef"};

}

TEST_CASE("the input hash is 64-bit fnv-1a in fixed-width hex") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
    CHECK(hash_hex("") == "cbf29ce484222325");
    CHECK(hash_hex("foobar").size() == 16);
}

TEST_CASE("presentations survive the JSON round trip byte-identically") {
    for (const Sft& X : {fixtures::golden(), fixtures::full2(), fixtures::blocky2(),
                         fixtures::cycle(3)}) {
        const std::string text = sft_to_json(X);
        const Sft back = sft_from_json(text);
        CHECK(sft_to_json(back) == text);
        CHECK(back.vertex_count() == X.vertex_count());
        CHECK(back.edge_count() == X.edge_count());
        CHECK(back.alphabet() == X.alphabet());
        CHECK(canonical_form(back, false) == canonical_form(X, false));
    }
}

TEST_CASE("forbidden-list and graph inputs both parse") {
    const Sft a = sft_from_json(R"({"alphabet": ["0", "1"], "forbidden": ["11"]})");
    CHECK(a.vertex_count() == 2);
    CHECK(a.edge_count() == 3);
    CHECK(canonical_form(a, false) == canonical_form(fixtures::golden(), false));

    const Sft b = sft_from_json(R"({
      "edges": [["A", "p", "B"], ["A", "q", "B"], ["B", "r", "A"], ["B", "s", "A"]]
    })");
    CHECK(b.vertex_count() == 2);
    CHECK(b.edge_count() == 4);

    const Sft c = sft_from_json(R"({
      "alphabet": ["x"], "vertices": ["u", "v"],
      "edges": [["u", "x", "v"], ["v", "x", "u"]]
    })");
    CHECK(c.vertex_count() == 2);
    CHECK(is_finite_shift(c));
}

TEST_CASE("malformed presentation inputs raise parse errors") {
    CHECK_THROWS_AS(sft_from_json("not json"), ParseError);
    CHECK_THROWS_AS(sft_from_json("{}"), ParseError);
    CHECK_THROWS_AS(sft_from_json(R"({"alphabet": ["0"], "forbidden": ["1"]})"), ParseError);
    CHECK_THROWS_AS(sft_from_json(R"({"edges": [["A", "p"]]})"), ParseError);
    CHECK_THROWS_AS(sft_from_json(R"({"alphabet": ["a"], "forbidden": ["a"]})"),
                    EmptyShiftError);
}

TEST_CASE("analysis reports carry metadata and the decision list") {
    const std::string text = analysis_to_json(fixtures::golden(), kMeta);
    const json j = json::parse(text);
    CHECK(j["meta"]["version"] == kVersion);
    CHECK(j["meta"]["seed"] == 7);
    CHECK(j["meta"]["input_hash"] == "00000000deadbeef");
    CHECK(j["decisions"].is_array());
    std::set<std::string> names;
    for (const auto& d : j["decisions"]) names.insert(d["decision"].get<std::string>());
    for (const char* want : {"surjective", "finite", "transitive", "period", "weakly_mixing",
                             "fixed_points", "dense_periodic_points"})
        CHECK(names.count(want) == 1);
    // Fibonacci counts surface in the report
    bool found_counts = false;
    for (const auto& d : j["decisions"])
        if (d["decision"] == "word_counts") {
            found_counts = true;
            CHECK(d["lengths_1_to_8"][0] == 2);
            CHECK(d["lengths_1_to_8"][7] == 55);
        }
    CHECK(found_counts);
    CHECK(analysis_to_json(fixtures::golden(), kMeta) == text);
}

TEST_CASE("hitting reports serialize members and tail") {
    const auto hs = hitting_set(fixtures::golden(), Word{1}, Word{1}, 12);
    const std::string text = hitting_to_json(fixtures::golden(), Word{1}, Word{1}, hs, kMeta);
    const json j = json::parse(text);
    CHECK(j["u"] == "1");
    CHECK(j["v"] == "1");
    CHECK(j["horizon"] == 12);
    CHECK(j["members"].size() == hs.members.size());
    REQUIRE(j.contains("tail"));
    CHECK(j["tail"]["period"] == 1);
}

TEST_CASE("certificates round-trip through JSON and still verify") {
    const Sft X = fixtures::golden();
    const auto cert = build_stages(X, 3, {.proximal = true});
    const std::string text = certificate_to_json(X, cert, kMeta);
    const auto back = certificate_from_json(X, text);
    CHECK(certificate_to_json(X, back, kMeta) == text);
    const auto check = verify_certificate(X, back);
    CHECK(check.pass);
    const json j = json::parse(certificate_check_to_json(X, back, check, kMeta));
    CHECK(j["pass"] == true);
    CHECK(j["stages"].size() == 3);
    CHECK(j["rigidity_ok"] == true);

    CHECK_THROWS_AS(certificate_from_json(X, "[]"), ParseError);
}

TEST_CASE("witness lists serialize with exact dyadic strings") {
    const Sft X = fixtures::full2();
    const auto w = make_scrambled_pair(X, 6, Dyadic::pow2(1), 512);
    const std::string text = witnesses_to_json(X, {w}, kMeta);
    const json j = json::parse(text);
    REQUIRE(j["witnesses"].size() == 1);
    const auto& jw = j["witnesses"][0];
    CHECK(jw["delta"] == "2^-1");
    CHECK(jw["horizon"].get<uint64_t>() >= 512);
    CHECK(jw["prox_times"].is_array());
    CHECK(!jw["prox_times"].empty());
    for (const auto& e : jw["apart_times"]) {
        const std::string d = e["dist"].get<std::string>();
        CHECK((d == "1" || d.substr(0, 3) == "2^-"));
    }
}

TEST_CASE("monoid reports are one-indexed and complete") {
    const FiniteDynSys sys{{1, 2, 1}};
    const auto env = enveloping(sys);
    const auto ideals = ideal_structure(env);
    const auto pairs = proximal_pairs(sys, env, ideals);
    const auto laws = verify_semigroup_laws(sys, env);
    const json j = json::parse(ellis_to_json(sys, env, ideals, pairs, laws, kMeta));
    CHECK(j["map"] == json::array({2, 3, 2}));
    REQUIRE(j["elements"].size() == 2);
    CHECK(j["elements"][0]["power"] == 1);
    CHECK(j["elements"][0]["map"] == json::array({2, 3, 2}));
    CHECK(j["table"].size() == 2);
    CHECK(j["laws"]["pass"] == true);
    REQUIRE(j["proximal_pairs"].size() == 1);
    CHECK(j["proximal_pairs"][0]["x"] == 1);
    CHECK(j["proximal_pairs"][0]["y"] == 3);

    const json s = json::parse(sweep_to_json(sweep_law_check(3), 3, kMeta));
    CHECK(s["systems"] == 32);  // 27 + 4 + 1
    CHECK(s["violations"] == 0);
}

TEST_CASE("classification reports expose flags, provenance, and decomposition") {
    const json j = json::parse(chaos_to_json(fixtures::blocky2(), classify(fixtures::blocky2(), 6), kMeta));
    CHECK(j["flags"]["transitive"] == "yes");
    CHECK(j["flags"]["weakly_mixing"] == "no");
    CHECK(j["flags"]["densely_uniformly_chaotic"] == "unknown");
    CHECK(j["flags"]["uniformly_chaotic"] == "yes");
    CHECK(j["provenance"].is_array());
    REQUIRE(j.contains("decomposition"));
    CHECK(j["decomposition"]["d"] == 2);
    CHECK(j["decomposition"]["covers_words_to_8"] == true);

    const json g = json::parse(chaos_to_json(fixtures::golden(), classify(fixtures::golden(), 6), kMeta));
    CHECK(g["flags"]["liyorke"] == "yes");
    CHECK(g["decomposition"].is_null());
}

TEST_CASE("dot export is deterministic and properly quoted") {
    const Sft X = fixtures::golden();
    const std::string dot = to_dot(X);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("label=") != std::string::npos);
    CHECK(to_dot(X) == dot);
    size_t edges = 0;
    for (size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos) ++edges;
    CHECK(edges == 3);

    const Sft q = Sft::from_parts({"a\"b"}, {"v\"1"}, {{0, 0, 0}});
    const std::string qd = to_dot(q);
    CHECK(qd.find("\\\"") != std::string::npos);
}

TEST_CASE("corpus generation is reproducible with the promised mix") {
    const auto entries = gen_corpus(1, 10, 4, 6);
    REQUIRE(entries.size() == 10);
    size_t transitive = 0;
    for (const auto& e : entries) {
        CHECK(e.shift.vertex_count() <= 6);
        CHECK(e.shift.alphabet_size() <= 4);
        CHECK(e.transitive == is_transitive(e.shift));
        CHECK(e.finite == is_finite_shift(e.shift));
        if (e.transitive) {
            CHECK(e.period >= 1);
            ++transitive;
        }
        const Sft back = sft_from_json(sft_to_json(e.shift));
        CHECK(back.edge_count() == e.shift.edge_count());
    }
    CHECK(transitive >= 5);
    CHECK(entries[0].name == "sft_000");

    const std::string m1 = corpus_manifest_json(entries, 1, std::string(kVersion));
    const std::string m2 = corpus_manifest_json(gen_corpus(1, 10, 4, 6), 1, std::string(kVersion));
    CHECK(m1 == m2);
    const json j = json::parse(m1);
    CHECK(j["seed"] == 1);
    CHECK(j["count"] == 10);
    CHECK(j["entries"].size() == 10);
}
