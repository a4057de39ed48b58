#include "symchaos/corpus.hpp"

#include <cstdio>

#include <json.hpp>

#include "symchaos/decide.hpp"
#include "symchaos/errors.hpp"

namespace symchaos {

namespace {

std::string symbol_name(size_t i) {
    if (i < 10) return std::string(1, static_cast<char>('0' + i));
    return std::string(1, static_cast<char>('a' + (i - 10)));
}

}  // namespace

Sft random_sft(std::mt19937_64& rng, size_t alphabet_max, size_t vertex_max) {
    if (alphabet_max == 0 || vertex_max == 0)
        throw HypothesisError("corpus sampling needs positive size bounds");
    while (true) {
        const size_t V = 1 + rng() % vertex_max;
        const size_t A = 1 + rng() % alphabet_max;
        std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
        for (Vertex u = 0; u < V; ++u) {
            bool any = false;
            for (Sym a = 0; a < A; ++a)
                if (rng() % 2 == 0) {
                    edges.emplace_back(u, a, static_cast<Vertex>(rng() % V));
                    any = true;
                }
            if (!any)
                edges.emplace_back(u, static_cast<Sym>(rng() % A),
                                   static_cast<Vertex>(rng() % V));
        }
        std::vector<std::string> alpha(A), names(V);
        for (size_t i = 0; i < A; ++i) alpha[i] = symbol_name(i);
        for (size_t i = 0; i < V; ++i) names[i] = "v" + std::to_string(i);
        try {
            return Sft::from_parts(std::move(alpha), std::move(names), std::move(edges));
        } catch (const EmptyShiftError&) {
            continue;  // every vertex keeps an out-edge, but stay defensive
        }
    }
}

std::vector<CorpusEntry> gen_corpus(uint64_t seed, size_t count, size_t alphabet_max,
                                    size_t vertex_max) {
    std::mt19937_64 rng(seed);
    const size_t want_transitive = (count + 1) / 2;
    std::vector<CorpusEntry> out;
    size_t transitive_so_far = 0;
    while (out.size() < count) {
        Sft X = random_sft(rng, alphabet_max, vertex_max);
        const bool trans = is_transitive(X);
        const size_t slots_left = count - out.size();
        const size_t transitive_needed =
            want_transitive > transitive_so_far ? want_transitive - transitive_so_far : 0;
        if (!trans && transitive_needed >= slots_left) continue;

        char buf[16];
        std::snprintf(buf, sizeof buf, "sft_%03zu", out.size());
        const bool finite = is_finite_shift(X);
        uint64_t d = 0;
        if (trans) {
            d = period(X);
            ++transitive_so_far;
        }
        out.push_back(CorpusEntry{buf, std::move(X), trans, finite, d});
    }
    return out;
}

std::string corpus_manifest_json(const std::vector<CorpusEntry>& entries, uint64_t seed,
                                 const std::string& version) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : entries)
        list.push_back(nlohmann::json{{"name", e.name},
                                      {"vertices", e.shift.vertex_count()},
                                      {"edges", e.shift.edge_count()},
                                      {"alphabet_size", e.shift.alphabet_size()},
                                      {"transitive", e.transitive},
                                      {"finite", e.finite},
                                      {"period", e.period}});
    return nlohmann::json{{"version", version},
                          {"seed", seed},
                          {"count", entries.size()},
                          {"entries", std::move(list)}}
               .dump(2) +
           "\n";
}

}  // namespace symchaos
