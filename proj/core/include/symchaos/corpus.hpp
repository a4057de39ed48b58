#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "symchaos/sft.hpp"

namespace symchaos {

struct CorpusEntry {
    std::string name;
    Sft shift;
    bool transitive = false;
    bool finite = false;
    uint64_t period = 0;  // set only when transitive
};

// One random trimmed presentation with out-edges carrying distinct symbols
// per vertex (forward-deterministic), never empty.
Sft random_sft(std::mt19937_64& rng, size_t alphabet_max, size_t vertex_max);

// Deterministic for a fixed seed; at least ceil(count/2) transitive entries
// by rejection sampling.
std::vector<CorpusEntry> gen_corpus(uint64_t seed, size_t count, size_t alphabet_max,
                                    size_t vertex_max);

// Canonical manifest text for a generated corpus (byte-stable per seed).
std::string corpus_manifest_json(const std::vector<CorpusEntry>& entries, uint64_t seed,
                                 const std::string& version);

}  // namespace symchaos
