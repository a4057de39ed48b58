#include "symchaos/sft.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace symchaos {

namespace {

bool contains_factor(const Word& w, const Word& f) {
    if (f.empty() || f.size() > w.size()) return false;
    for (size_t i = 0; i + f.size() <= w.size(); ++i)
        if (std::equal(f.begin(), f.end(), w.begin() + i)) return true;
    return false;
}

bool contains_any_factor(const Word& w, const std::vector<Word>& fs) {
    for (const Word& f : fs)
        if (contains_factor(w, f)) return true;
    return false;
}

}  // namespace

size_t Sft::edge_count() const {
    size_t n = 0;
    for (const auto& out : adj_) n += out.size();
    return n;
}

std::optional<Sym> Sft::sym_index(const std::string& name) const {
    for (size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == name) return Sym(i);
    return std::nullopt;
}

bool Sft::single_char_alphabet() const {
    for (const auto& s : alphabet_)
        if (s.size() != 1) return false;
    return true;
}

Sft Sft::from_parts(std::vector<std::string> alphabet,
                    std::vector<std::string> vertex_names,
                    std::vector<std::tuple<Vertex, Sym, Vertex>> edges,
                    Origin origin,
                    std::vector<Vertex>* kept_out) {
    const size_t n = vertex_names.size();
    for (auto& [u, s, v] : edges) {
        if (u >= n || v >= n) throw ParseError("edge endpoint out of range");
        if (s >= alphabet.size()) throw ParseError("edge symbol out of range");
    }

    // Trim to the forward-essential part: drop vertices with no outgoing edge
    // until stable.  Points live on infinite paths only.
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<bool> has_out(n, false);
        for (auto& [u, s, v] : edges)
            if (alive[u] && alive[v]) has_out[u] = true;
        for (size_t i = 0; i < n; ++i)
            if (alive[i] && !has_out[i]) alive[i] = false, changed = true;
    }

    std::vector<Vertex> remap(n, UINT32_MAX);
    std::vector<Vertex> kept;
    for (size_t i = 0; i < n; ++i)
        if (alive[i]) {
            remap[i] = Vertex(kept.size());
            kept.push_back(Vertex(i));
        }
    if (kept.empty()) throw EmptyShiftError();

    Sft X;
    X.alphabet_ = std::move(alphabet);
    X.origin_ = origin;
    for (Vertex old : kept) X.vertex_names_.push_back(vertex_names[old]);
    X.adj_.resize(kept.size());
    for (auto& [u, s, v] : edges)
        if (alive[u] && alive[v]) X.adj_[remap[u]].push_back(Edge{s, remap[v]});
    for (auto& out : X.adj_) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

    std::vector<bool> has_in(kept.size(), false);
    for (const auto& out : X.adj_)
        for (const Edge& e : out) has_in[e.to] = true;
    X.surjective_ = std::all_of(has_in.begin(), has_in.end(), [](bool b) { return b; });

    if (kept_out) *kept_out = kept;
    return X;
}

Sft Sft::from_forbidden(std::vector<std::string> alphabet, std::vector<Word> forbidden) {
    if (alphabet.empty()) throw ParseError("empty alphabet");
    for (const Word& f : forbidden) {
        if (f.empty()) throw ParseError("empty forbidden word");
        for (Sym s : f)
            if (s >= alphabet.size()) throw ParseError("forbidden word symbol out of range");
    }
    size_t m = 1;
    for (const Word& f : forbidden) m = std::max(m, f.size());

    // Vertices: forbidden-factor-free words of length m-1 (windows).
    std::vector<Word> windows;
    Word cur;
    auto gen = [&](auto&& self) -> void {
        if (cur.size() == m - 1) {
            windows.push_back(cur);
            return;
        }
        for (Sym a = 0; a < alphabet.size(); ++a) {
            cur.push_back(a);
            if (!contains_any_factor(cur, forbidden)) self(self);
            cur.pop_back();
        }
    };
    gen(gen);

    std::map<Word, Vertex> index;
    std::vector<std::string> names;
    for (const Word& w : windows) {
        index.emplace(w, Vertex(names.size()));
        std::string nm;
        bool single = std::all_of(alphabet.begin(), alphabet.end(),
                                  [](const std::string& s) { return s.size() == 1; });
        for (size_t i = 0; i < w.size(); ++i) {
            if (!single && i) nm += '.';
            nm += alphabet[w[i]];
        }
        names.push_back(nm);
    }

    // Edge per legal m-block u = w·a, from window u[0..m-2] to u[1..m-1],
    // labeled u[0] — the symbol the path emits at that step.
    std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
    for (const Word& w : windows) {
        for (Sym a = 0; a < alphabet.size(); ++a) {
            Word block = w;
            block.push_back(a);
            if (contains_any_factor(block, forbidden)) continue;
            Word next(block.begin() + 1, block.end());
            auto it = index.find(next);
            if (it == index.end()) continue;
            Sym label = (m == 1) ? a : block[0];
            edges.emplace_back(index[w], label, it->second);
        }
    }

    Sft X = from_parts(std::move(alphabet), std::move(names), std::move(edges),
                       Origin::ForbiddenWords);
    X.forbidden_ = std::move(forbidden);
    return X;
}

StateSet Sft::step(const StateSet& s, Sym a) const {
    StateSet out(vertex_count());
    for (size_t v = 0; v < vertex_count(); ++v) {
        if (!s.test(v)) continue;
        for (const Edge& e : adj_[v])
            if (e.sym == a) out.set(e.to);
    }
    return out;
}

StateSet Sft::step_any(const StateSet& s) const {
    StateSet out(vertex_count());
    for (size_t v = 0; v < vertex_count(); ++v) {
        if (!s.test(v)) continue;
        for (const Edge& e : adj_[v]) out.set(e.to);
    }
    return out;
}

StateSet Sft::read(StateSet s, const Word& w) const {
    for (Sym a : w) {
        if (s.empty()) break;
        s = step(s, a);
    }
    return s;
}

StateSet Sft::spellers(const Word& w) const {
    StateSet cur = all_states();
    for (size_t i = w.size(); i-- > 0;) {
        StateSet prev(vertex_count());
        for (size_t v = 0; v < vertex_count(); ++v)
            for (const Edge& e : adj_[v])
                if (e.sym == w[i] && cur.test(e.to)) {
                    prev.set(v);
                    break;
                }
        cur = prev;
        if (cur.empty()) break;
    }
    return cur;
}

bool Sft::pattern_feasible(const std::vector<std::optional<Sym>>& pattern) const {
    StateSet s = all_states();
    for (const auto& slot : pattern) {
        s = slot ? step(s, *slot) : step_any(s);
        if (s.empty()) return false;
    }
    return true;
}

// --- words ---

Word parse_word(const Sft& X, const std::string& text) {
    if (!X.single_char_alphabet())
        throw ParseError("string words require a single-character alphabet");
    Word w;
    for (char c : text) {
        auto s = X.sym_index(std::string(1, c));
        if (!s) throw ParseError(std::string("unknown symbol '") + c + "'");
        w.push_back(*s);
    }
    return w;
}

std::string word_str(const Sft& X, const Word& w) {
    std::string out;
    bool single = X.single_char_alphabet();
    for (size_t i = 0; i < w.size(); ++i) {
        if (!single && i) out += '.';
        out += X.alphabet()[w[i]];
    }
    return out;
}

bool word_legal(const Sft& X, const Word& w) {
    return X.read(X.all_states(), w).any() || w.empty();
}

std::vector<Word> language(const Sft& X, size_t L) {
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, const StateSet& s) -> void {
        if (cur.size() == L) {
            out.push_back(cur);
            return;
        }
        for (Sym a = 0; a < X.alphabet_size(); ++a) {
            StateSet next = X.step(s, a);
            if (next.empty()) continue;
            cur.push_back(a);
            self(self, next);
            cur.pop_back();
        }
    };
    rec(rec, X.all_states());
    return out;
}

uint64_t language_count(const Sft& X, size_t L) {
    uint64_t n = 0;
    Word cur;
    auto rec = [&](auto&& self, const StateSet& s, size_t depth) -> void {
        if (depth == L) {
            ++n;
            return;
        }
        for (Sym a = 0; a < X.alphabet_size(); ++a) {
            StateSet next = X.step(s, a);
            if (!next.empty()) self(self, next, depth + 1);
        }
    };
    rec(rec, X.all_states(), 0);
    return n;
}

std::optional<Word> shift_image(const Word& w, uint64_t k) {
    if (w.size() <= k) return std::nullopt;
    return Word(w.begin() + k, w.end());
}

Dyadic cylinder_diam(const Sft& X, const Word& w) {
    StateSet s = X.read(X.all_states(), w);
    if (s.empty()) throw HypothesisError("cylinder word is not in the language");
    // Deterministic walk over continuation state sets: any branch point means
    // two distinct extensions; a cycle without branching means a unique point.
    std::set<StateSet> seen;
    while (seen.insert(s).second) {
        std::optional<Sym> only;
        for (Sym a = 0; a < X.alphabet_size(); ++a) {
            if (X.step(s, a).any()) {
                if (only) return Dyadic::pow2(uint32_t(w.size()));
                only = a;
            }
        }
        s = X.step(s, *only);
    }
    return Dyadic::zero();
}

// --- points ---

namespace {

Word primitive_root(const Word& v) {
    for (size_t p = 1; p <= v.size(); ++p) {
        if (v.size() % p) continue;
        bool ok = true;
        for (size_t i = p; i < v.size() && ok; ++i) ok = v[i] == v[i - p];
        if (ok) return Word(v.begin(), v.begin() + p);
    }
    return v;
}

}  // namespace

PointRep normalize(PointRep x) {
    if (x.per.empty()) throw HypothesisError("point has empty period");
    x.per = primitive_root(x.per);
    // u·a (v'·a)^inf = u (a·v')^inf: absorb matching tail symbols into the cycle.
    while (!x.pre.empty() && x.pre.back() == x.per.back()) {
        x.pre.pop_back();
        std::rotate(x.per.begin(), x.per.end() - 1, x.per.end());
    }
    return x;
}

Sym point_at(const PointRep& x, uint64_t i) {
    if (i < x.pre.size()) return x.pre[i];
    return x.per[(i - x.pre.size()) % x.per.size()];
}

PointRep shift_point(const PointRep& x, uint64_t k) {
    PointRep y;
    if (k < x.pre.size()) {
        y.pre = Word(x.pre.begin() + k, x.pre.end());
        y.per = x.per;
    } else {
        size_t j = (k - x.pre.size()) % x.per.size();
        y.per = Word(x.per.begin() + j, x.per.end());
        y.per.insert(y.per.end(), x.per.begin(), x.per.begin() + j);
    }
    return normalize(y);
}

bool point_equal(const PointRep& a, const PointRep& b) {
    return normalize(a) == normalize(b);
}

Dyadic dist(const PointRep& x, const PointRep& y) {
    uint64_t bound = std::max(x.pre.size(), y.pre.size()) +
                     std::lcm(uint64_t(x.per.size()), uint64_t(y.per.size()));
    for (uint64_t i = 0; i < bound; ++i)
        if (point_at(x, i) != point_at(y, i)) return Dyadic::pow2(uint32_t(i));
    return Dyadic::zero();
}

bool point_legal(const Sft& X, const PointRep& x) {
    StateSet s = X.read(X.all_states(), x.pre);
    if (s.empty()) return false;
    // r --per--> q relation; x legal iff from s we can reach a per-cycle.
    const size_t n = X.vertex_count();
    std::vector<StateSet> rel(n);
    for (size_t v = 0; v < n; ++v) {
        StateSet one(n);
        one.set(v);
        rel[v] = X.read(one, x.per);
    }
    // Closure of s under rel, then look for a vertex on a rel-cycle.
    StateSet reach = s;
    bool grew = true;
    while (grew) {
        grew = false;
        StateSet next = reach;
        for (size_t v = 0; v < n; ++v)
            if (reach.test(v)) next |= rel[v];
        if (!(next == reach)) reach = next, grew = true;
    }
    for (size_t v = 0; v < n; ++v) {
        if (!reach.test(v)) continue;
        // v on a rel-cycle iff v reachable from itself in >= 1 rel-steps.
        StateSet fwd = rel[v];
        for (size_t it = 0; it < n; ++it) {
            if (fwd.test(v)) return true;
            StateSet next = fwd;
            for (size_t u = 0; u < n; ++u)
                if (fwd.test(u)) next |= rel[u];
            if (next == fwd) break;
            fwd = next;
        }
    }
    return false;
}

std::string point_str(const Sft& X, const PointRep& x) {
    return word_str(X, x.pre) + "(" + word_str(X, x.per) + ")^inf";
}

PointRep canonical_completion(const Sft& X, const Word& w) {
    StateSet s = X.read(X.all_states(), w);
    if (s.empty()) throw HypothesisError("completion of a word outside the language");
    Word tail;
    std::map<StateSet, size_t> seen;  // state set -> index into tail where it occurred
    while (true) {
        auto [it, fresh] = seen.emplace(s, tail.size());
        if (!fresh) {
            size_t start = it->second;
            PointRep x;
            x.pre = w;
            x.pre.insert(x.pre.end(), tail.begin(), tail.begin() + start);
            x.per = Word(tail.begin() + start, tail.end());
            return normalize(x);
        }
        for (Sym a = 0; a < X.alphabet_size(); ++a) {
            StateSet next = X.step(s, a);
            if (next.any()) {
                tail.push_back(a);
                s = next;
                break;
            }
        }
    }
}

bool is_finite_shift(const Sft& X) {
    // Determinize from the full state set; states are subsets, edges carry the
    // symbols with nonempty successor.  Infinite iff some state on a cycle of
    // this automaton has two or more out-symbols.
    std::map<StateSet, int> id;
    std::vector<StateSet> states;
    std::vector<std::vector<int>> succ;
    std::vector<int> out_symbols;
    auto intern = [&](const StateSet& s) {
        auto [it, fresh] = id.emplace(s, int(states.size()));
        if (fresh) {
            states.push_back(s);
            succ.emplace_back();
            out_symbols.push_back(0);
        }
        return it->second;
    };
    int root = intern(X.all_states());
    for (int i = 0; i < int(states.size()); ++i) {
        for (Sym a = 0; a < X.alphabet_size(); ++a) {
            StateSet next = X.step(states[i], a);
            if (next.empty()) continue;
            const int target = intern(next);  // may grow succ; index after
            ++out_symbols[i];
            succ[i].push_back(target);
        }
    }
    (void)root;

    // A deterministic state lies on a cycle iff it is reachable from one of
    // its successors.  Sizes here are tiny; a quadratic check is fine.
    const int n = int(states.size());
    auto reaches = [&](int from, int target) {
        std::vector<bool> vis(n, false);
        std::vector<int> stack{from};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v == target) return true;
            if (vis[v]) continue;
            vis[v] = true;
            for (int w : succ[v]) stack.push_back(w);
        }
        return false;
    };
    for (int v = 0; v < n; ++v) {
        if (out_symbols[v] < 2) continue;
        for (int w : succ[v])
            if (w == v || reaches(w, v)) return false;  // branching on a cycle
    }
    return true;
}

}  // namespace symchaos
