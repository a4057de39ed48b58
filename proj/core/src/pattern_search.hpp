#pragma once

// Pattern-feasibility helpers shared by a few translation units; internal,
// not installed.  A pattern pins some positions of a word and leaves the
// rest free; all searches below are exact and lexicographically least.

#include <optional>
#include <utility>
#include <vector>

#include "symchaos/sft.hpp"

namespace symchaos::detail {

using Pattern = std::vector<std::optional<Sym>>;

// Vertices with an a-edge into `next`.
StateSet spellers_step(const Sft& X, Sym a, const StateSet& next);

// States reachable at successive times among paths that spell all of `u`
// from some start vertex (inside `u` the future pins stay enforced).
struct PinnedFront {
    const Sft* X;
    Word u;
    std::vector<StateSet> spell_suffix;  // spell_suffix[t] = spellers of u[t..]
    StateSet front;
    uint64_t t = 0;

    PinnedFront(const Sft& x, Word w);

    std::optional<Sym> pin(uint64_t tt) const {
        if (tt < u.size()) return u[tt];
        return std::nullopt;
    }

    // One step by symbol `a` from a sub-front at time tt.
    StateSet advanced(const StateSet& s, uint64_t tt, Sym a) const;

    void advance_any();
};

// Least t in [t_min, horizon] admitting a block c of length `len` such that
// pattern(u_i at 0, c at t) is feasible for every i, plus the lex-least such
// c; nullopt when no t in range works.
std::optional<std::pair<uint64_t, Word>> least_common_block_time(
    const Sft& X, const std::vector<Word>& us, size_t len, uint64_t t_min,
    uint64_t horizon);

// Lex-least legal word matching the pattern; HypothesisError when infeasible.
Word realize_pattern(const Sft& X, const Pattern& pat);

// Up to `count` lex-least legal words matching the pattern.
std::vector<Word> first_pattern_words(const Sft& X, const Pattern& pat, size_t count);

}  // namespace symchaos::detail
