#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symchaos/decide.hpp"
#include "symchaos/sft.hpp"

namespace symchaos {

// One cyclic component of a period-d shift, presented on d-block symbols: the
// d-th power shift restricted to one residue class.  The original shift is
// the union of the j-step shifts of this component, 0 <= j < d.
struct Decomposition {
    uint64_t d = 0;
    Sft x0;
    std::vector<Word> block_words;  // expansion of each x0 symbol into d-blocks
    Verdict x0_transitive = Verdict::Unknown;
    Verdict x0_has_fixed_point = Verdict::Unknown;
    Verdict x0_densely_uniformly_chaotic = Verdict::Unknown;
};

struct ChaosReport {
    bool finite = false;
    uint64_t period = 0;

    Verdict transitive = Verdict::Unknown;
    Verdict totally_transitive = Verdict::Unknown;
    Verdict weakly_mixing = Verdict::Unknown;
    Verdict devaney = Verdict::Unknown;
    Verdict densely_uniformly_chaotic = Verdict::Unknown;
    Verdict uniformly_chaotic = Verdict::Unknown;
    Verdict strong_liyorke = Verdict::Unknown;
    Verdict liyorke = Verdict::Unknown;

    // flag name -> rule that set it; deterministic order of insertion.
    std::vector<std::pair<std::string, std::string>> provenance;
    std::optional<Decomposition> decomposition;
};

// Decision cascade.  Cheapest certificate first: fixed point, then total
// transitivity with a periodic point, then weak mixing, then a budgeted
// product-subsystem search.  Chaos verdicts are three-valued; "unknown" is
// never coerced.  Throws NotSurjectiveError; finite shifts get a degenerate
// all-no report rather than an exception.
ChaosReport classify(const Sft& X, size_t budget);

// Period-d cyclic decomposition (empty unless transitive with period >= 2).
std::optional<Decomposition> decompose_periodic(const Sft& X);

// Exact check that words of length <= len of the original shift are exactly
// the windows of expanded component words under all d shifts.
bool decomposition_covers(const Sft& X, const Decomposition& dec, size_t len);

// Violations of the verdict implication order (empty = consistent):
// weakly_mixing => densely_uniformly_chaotic => uniformly_chaotic =>
// strong_liyorke => liyorke; devaney => uniformly_chaotic; weakly_mixing =>
// totally_transitive => transitive; devaney => transitive.
std::vector<std::string> implication_audit(const ChaosReport& r);

}  // namespace symchaos
