#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "symchaos/dyadic.hpp"
#include "symchaos/errors.hpp"

namespace symchaos {

using Sym = uint16_t;
using Word = std::vector<Sym>;
using Vertex = uint32_t;

struct Edge {
    Sym sym;
    Vertex to;
    auto operator<=>(const Edge&) const = default;
};

enum class Origin { ForbiddenWords, VertexShift, EdgeShift };

// Dynamic bit set over vertex indices; the workhorse for all path searches.
class StateSet {
  public:
    StateSet() = default;
    explicit StateSet(size_t n) : n_(n), bits_((n + 63) / 64, 0) {}
    static StateSet all(size_t n) {
        StateSet s(n);
        for (size_t i = 0; i < s.bits_.size(); ++i) s.bits_[i] = ~uint64_t(0);
        if (n % 64) s.bits_.back() = (uint64_t(1) << (n % 64)) - 1;
        if (n == 0) s.bits_.clear();
        return s;
    }
    void set(size_t i) { bits_[i / 64] |= uint64_t(1) << (i % 64); }
    bool test(size_t i) const { return (bits_[i / 64] >> (i % 64)) & 1; }
    bool any() const {
        for (uint64_t b : bits_)
            if (b) return true;
        return false;
    }
    bool empty() const { return !any(); }
    size_t size() const { return n_; }
    bool intersects(const StateSet& o) const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & o.bits_[i]) return true;
        return false;
    }
    void operator|=(const StateSet& o) {
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    }
    friend bool operator==(const StateSet&, const StateSet&) = default;
    friend bool operator<(const StateSet& a, const StateSet& b) { return a.bits_ < b.bits_; }
    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        for (size_t i = 0; i < n_; ++i)
            if (test(i)) out.push_back(Vertex(i));
        return out;
    }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> bits_;
};

// A one-sided shift space presented by a labeled directed graph.  Points are
// the label streams of infinite paths; paths may start at any vertex.  The
// constructor trims to the forward-essential part, so every retained vertex
// has at least one outgoing edge and every finite path extends to a point.
class Sft {
  public:
    // De Bruijn presentation from forbidden words: with m = max(1, longest
    // forbidden word), vertices are the legal windows of length m-1 and each
    // edge realizes a legal m-block, labeled by the block's first symbol.
    static Sft from_forbidden(std::vector<std::string> alphabet, std::vector<Word> forbidden);

    // Arbitrary labeled-graph presentation. `edges` entries are (source
    // index, symbol, target index).  Trims; throws EmptyShiftError if nothing
    // survives.
    static Sft from_parts(std::vector<std::string> alphabet,
                          std::vector<std::string> vertex_names,
                          std::vector<std::tuple<Vertex, Sym, Vertex>> edges,
                          Origin origin = Origin::VertexShift,
                          std::vector<Vertex>* kept_out = nullptr);

    size_t vertex_count() const { return adj_.size(); }
    size_t alphabet_size() const { return alphabet_.size(); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::vector<std::vector<Edge>>& adjacency() const { return adj_; }
    size_t edge_count() const;
    Origin origin() const { return origin_; }
    bool surjective() const { return surjective_; }
    const std::vector<Word>& forbidden_words() const { return forbidden_; }

    std::optional<Sym> sym_index(const std::string& name) const;
    bool single_char_alphabet() const;

    // --- state-set primitives ---
    StateSet all_states() const { return StateSet::all(vertex_count()); }
    StateSet step(const StateSet& s, Sym a) const;
    StateSet step_any(const StateSet& s) const;
    StateSet read(StateSet s, const Word& w) const;  // states reachable spelling w
    StateSet spellers(const Word& w) const;          // states from which w is spellable

    // Some legal word of length pattern.size() matches the pattern (fixed
    // symbols at the set positions, free elsewhere)?
    bool pattern_feasible(const std::vector<std::optional<Sym>>& pattern) const;

    // Empty placeholder (no vertices); real presentations come from the
    // factories above, which never produce an empty graph.
    Sft() = default;

  private:
    std::vector<std::string> alphabet_;
    std::vector<std::string> vertex_names_;
    std::vector<std::vector<Edge>> adj_;
    Origin origin_ = Origin::VertexShift;
    bool surjective_ = false;
    std::vector<Word> forbidden_;
};

// --- words ---

// Parse per character against a single-character alphabet.
Word parse_word(const Sft& X, const std::string& text);
std::string word_str(const Sft& X, const Word& w);

bool word_legal(const Sft& X, const Word& w);
// All legal words of length L, lexicographic by symbol index.
std::vector<Word> language(const Sft& X, size_t L);
uint64_t language_count(const Sft& X, size_t L);

// Suffix w[k..]; empty optional signals that w is too short (|w| <= k).
std::optional<Word> shift_image(const Word& w, uint64_t k);

// 2^-|w| unless [w] is a single point (unique infinite extension), then 0.
// Requires w legal.
Dyadic cylinder_diam(const Sft& X, const Word& w);

// --- eventually periodic points ---

// x = pre · per^inf.  Canonical form: per primitive and pre minimal.
struct PointRep {
    Word pre;
    Word per;
    friend bool operator==(const PointRep&, const PointRep&) = default;
};

PointRep normalize(PointRep x);
Sym point_at(const PointRep& x, uint64_t i);
PointRep shift_point(const PointRep& x, uint64_t k);
bool point_equal(const PointRep& a, const PointRep& b);
// d(x,y) = 2^-(first disagreement index), 0 if equal.  Exact.
Dyadic dist(const PointRep& x, const PointRep& y);
bool point_legal(const Sft& X, const PointRep& x);
std::string point_str(const Sft& X, const PointRep& x);

// The lexicographically least point with prefix w (greedy over the
// determinized continuation), eventually periodic by finiteness.
PointRep canonical_completion(const Sft& X, const Word& w);

// Finitely many points?  Decided on the determinized presentation: infinite
// iff some reachable deterministic state on a cycle has two out-symbols.
bool is_finite_shift(const Sft& X);

}  // namespace symchaos
