#include "pattern_search.hpp"

#include <algorithm>

#include "symchaos/errors.hpp"

namespace symchaos::detail {

StateSet spellers_step(const Sft& X, Sym a, const StateSet& next) {
    StateSet out(X.vertex_count());
    for (Vertex v = 0; v < X.vertex_count(); ++v)
        for (const Edge& e : X.adjacency()[v])
            if (e.sym == a && next.test(e.to)) { out.set(v); break; }
    return out;
}

PinnedFront::PinnedFront(const Sft& x, Word w)
    : X(&x), u(std::move(w)), front(x.vertex_count()) {
    spell_suffix.assign(u.size() + 1, StateSet(x.vertex_count()));
    spell_suffix[u.size()] = x.all_states();
    for (size_t i = u.size(); i-- > 0;)
        spell_suffix[i] = spellers_step(x, u[i], spell_suffix[i + 1]);
    front = spell_suffix[0];
}

StateSet PinnedFront::advanced(const StateSet& s, uint64_t tt, Sym a) const {
    StateSet nxt = X->step(s, a);
    if (tt + 1 < spell_suffix.size()) {
        StateSet keep(X->vertex_count());
        for (Vertex v : nxt.members())
            if (spell_suffix[tt + 1].test(v)) keep.set(v);
        return keep;
    }
    return nxt;
}

void PinnedFront::advance_any() {
    if (auto p = pin(t)) {
        front = advanced(front, t, *p);
    } else {
        front = X->step_any(front);
    }
    ++t;
}

namespace {

bool common_target_dfs(const Sft& X, const std::vector<PinnedFront>& fronts,
                       std::vector<StateSet> cur, uint64_t t, size_t depth,
                       size_t want, Word& target) {
    if (depth == want) return true;
    for (Sym a = 0; a < X.alphabet_size(); ++a) {
        bool ok = true;
        for (const auto& f : fronts) {
            auto p = f.pin(t + depth);
            if (p && *p != a) { ok = false; break; }
        }
        if (!ok) continue;
        std::vector<StateSet> nxt;
        nxt.reserve(cur.size());
        for (size_t i = 0; i < cur.size() && ok; ++i) {
            StateSet s = fronts[i].advanced(cur[i], t + depth, a);
            if (!s.any()) ok = false;
            nxt.push_back(std::move(s));
        }
        if (!ok) continue;
        target.push_back(a);
        if (common_target_dfs(X, fronts, std::move(nxt), t, depth + 1, want, target))
            return true;
        target.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::pair<uint64_t, Word>> least_common_block_time(
    const Sft& X, const std::vector<Word>& us, size_t len, uint64_t t_min,
    uint64_t horizon) {
    std::vector<PinnedFront> fronts;
    fronts.reserve(us.size());
    for (const Word& u : us) fronts.emplace_back(X, u);
    for (uint64_t t = 0; t <= horizon; ++t) {
        if (t >= t_min) {
            std::vector<StateSet> cur;
            cur.reserve(fronts.size());
            for (const auto& f : fronts) cur.push_back(f.front);
            Word target;
            if (common_target_dfs(X, fronts, std::move(cur), t, 0, len, target))
                return std::make_pair(t, target);
        }
        for (auto& f : fronts) f.advance_any();
    }
    return std::nullopt;
}

namespace {

// Backward feasible sets: back[t] = states from which pat[t..] is spellable.
// Empty back[0] (or any intermediate emptiness) means infeasible.
std::vector<StateSet> back_sets(const Sft& X, const Pattern& pat) {
    const size_t L = pat.size();
    std::vector<StateSet> back(L + 1, StateSet(X.vertex_count()));
    back[L] = X.all_states();
    for (size_t t = L; t-- > 0;) {
        for (Vertex v = 0; v < X.vertex_count(); ++v)
            for (const Edge& e : X.adjacency()[v])
                if ((!pat[t] || e.sym == *pat[t]) && back[t + 1].test(e.to)) {
                    back[t].set(v);
                    break;
                }
        if (!back[t].any()) return {};
    }
    return back;
}

StateSet step_into(const Sft& X, const StateSet& cur, Sym a, const StateSet& allowed) {
    StateSet nxt = X.step(cur, a);
    StateSet keep(X.vertex_count());
    for (Vertex v : nxt.members())
        if (allowed.test(v)) keep.set(v);
    return keep;
}

}  // namespace

Word realize_pattern(const Sft& X, const Pattern& pat) {
    auto back = back_sets(X, pat);
    if (back.empty()) throw HypothesisError("pattern is not realizable");
    StateSet cur = back[0];
    Word w;
    for (size_t t = 0; t < pat.size(); ++t) {
        for (Sym a = 0; a < X.alphabet_size(); ++a) {
            if (pat[t] && *pat[t] != a) continue;
            StateSet keep = step_into(X, cur, a, back[t + 1]);
            if (keep.any()) {
                w.push_back(a);
                cur = std::move(keep);
                break;
            }
        }
    }
    if (w.size() != pat.size()) throw HypothesisError("pattern is not realizable");
    return w;
}

namespace {

void pattern_dfs(const Sft& X, const Pattern& pat, const std::vector<StateSet>& back,
                 size_t t, const StateSet& cur, Word& prefix, size_t count,
                 std::vector<Word>& out) {
    if (out.size() >= count) return;
    if (t == pat.size()) {
        out.push_back(prefix);
        return;
    }
    for (Sym a = 0; a < X.alphabet_size(); ++a) {
        if (pat[t] && *pat[t] != a) continue;
        StateSet keep = step_into(X, cur, a, back[t + 1]);
        if (!keep.any()) continue;
        prefix.push_back(a);
        pattern_dfs(X, pat, back, t + 1, keep, prefix, count, out);
        prefix.pop_back();
        if (out.size() >= count) return;
    }
}

}  // namespace

std::vector<Word> first_pattern_words(const Sft& X, const Pattern& pat, size_t count) {
    auto back = back_sets(X, pat);
    if (back.empty()) return {};
    std::vector<Word> out;
    Word prefix;
    pattern_dfs(X, pat, back, 0, back[0], prefix, count, out);
    return out;
}

}  // namespace symchaos::detail
