#pragma once

#include <string>
#include <vector>

#include "symchaos/classify.hpp"
#include "symchaos/construct.hpp"
#include "symchaos/decide.hpp"
#include "symchaos/ellis.hpp"
#include "symchaos/product.hpp"
#include "symchaos/sft.hpp"
#include "symchaos/witness.hpp"

// String-in/string-out JSON layer.  All emitters produce canonical text:
// keys sorted, two-space indent, words rendered as strings when the alphabet
// is single-character and as symbol-name arrays otherwise.  Identical inputs
// give byte-identical output.

namespace symchaos {

// Stamped onto every report.
struct RunMeta {
    std::string version;
    uint64_t seed = 0;
    std::string input_hash;  // 64-bit FNV-1a of the raw input, hex
};

// Presentations.  Accepted input forms:
//   {"alphabet": [...], "forbidden": [...]}            width-limited shift
//   {"alphabet": [...]?, "vertices": [...], "edges": [["u","sym","v"], ...]}
// Emitted form is always the graph form (round-trips to an equal
// presentation).  Throws ParseError on malformed input.
std::string sft_to_json(const Sft& X);
Sft sft_from_json(const std::string& text);

std::string analysis_to_json(const Sft& X, const RunMeta& meta);
std::string hitting_to_json(const Sft& X, const Word& u, const Word& v, const HittingSet& hs,
                            const RunMeta& meta);
std::string criterion_to_json(const Sft& X, const CriterionReport& rep, const RunMeta& meta);

std::string certificate_to_json(const Sft& X, const ConstructionCertificate& cert,
                                const RunMeta& meta);
ConstructionCertificate certificate_from_json(const Sft& X, const std::string& text);
std::string certificate_check_to_json(const Sft& X, const ConstructionCertificate& cert,
                                      const CertificateCheck& check, const RunMeta& meta);

std::string witnesses_to_json(const Sft& X, const std::vector<PairWitness>& ws,
                              const RunMeta& meta);

std::string ellis_to_json(const FiniteDynSys& sys, const EnvMonoid& env,
                          const IdealStructure& ideals, const std::vector<ProximalPair>& pairs,
                          const LawReport& laws, const RunMeta& meta);
std::string sweep_to_json(const SweepReport& rep, uint32_t max_size, const RunMeta& meta);

std::string chaos_to_json(const Sft& X, const ChaosReport& rep, const RunMeta& meta);

}  // namespace symchaos
