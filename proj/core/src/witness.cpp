#include "symchaos/witness.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "symchaos/decide.hpp"
#include "symchaos/errors.hpp"

namespace symchaos {

namespace {

// Lex-least shortest closed walk word at vertex c0 (exists: the graph is
// strongly connected and essential).
Word least_cycle_word(const Sft& X, Vertex c0) {
    const size_t n = X.vertex_count();
    // dist_back[v]: shortest walk length v -> c0.
    std::vector<uint64_t> dist_back(n, UINT64_MAX);
    {
        std::vector<std::vector<Vertex>> preds(n);
        for (Vertex u = 0; u < n; ++u)
            for (const Edge& e : X.adjacency()[u]) preds[e.to].push_back(u);
        std::deque<Vertex> q{c0};
        dist_back[c0] = 0;
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop_front();
            for (Vertex u : preds[v])
                if (dist_back[u] == UINT64_MAX) {
                    dist_back[u] = dist_back[v] + 1;
                    q.push_back(u);
                }
        }
    }
    uint64_t len = UINT64_MAX;
    for (const Edge& e : X.adjacency()[c0])
        if (dist_back[e.to] != UINT64_MAX) len = std::min(len, 1 + dist_back[e.to]);
    if (len == UINT64_MAX) throw HypothesisError("anchor vertex lies on no cycle");
    Word w;
    Vertex cur = c0;
    for (uint64_t t = 0; t < len; ++t) {
        const uint64_t remaining = len - t - 1;
        for (const Edge& e : X.adjacency()[cur]) {
            const uint64_t need = remaining == 0
                                      ? (e.to == c0 ? 0 : UINT64_MAX)
                                      : dist_back[e.to];
            if (need == remaining) {
                w.push_back(e.sym);
                cur = e.to;
                break;
            }
        }
    }
    if (w.size() != len) throw HypothesisError("anchor vertex lies on no cycle");
    return w;
}

// BFS over determinized states from {c0} until a state offers two symbols.
struct Branch {
    Word w_pre;
    Sym a0 = 0, a1 = 0;
};

std::optional<Branch> find_branch(const Sft& X, Vertex c0) {
    StateSet start(X.vertex_count());
    start.set(c0);
    std::set<StateSet> seen{start};
    std::deque<std::pair<StateSet, Word>> q{{start, {}}};
    while (!q.empty()) {
        auto [s, w] = q.front();
        q.pop_front();
        std::vector<Sym> outs;
        for (Sym a = 0; a < X.alphabet_size(); ++a)
            if (X.step(s, a).any()) outs.push_back(a);
        if (outs.size() >= 2) return Branch{w, outs[0], outs[1]};
        for (Sym a : outs) {
            StateSet t = X.step(s, a);
            if (seen.insert(t).second) {
                Word w2 = w;
                w2.push_back(a);
                q.emplace_back(std::move(t), std::move(w2));
            }
        }
    }
    return std::nullopt;
}

// Lex-least shortest word taking the state set back to (a set containing)
// the anchor.
Word route_back(const Sft& X, StateSet s, Vertex c0) {
    if (s.test(c0)) return {};
    std::set<StateSet> seen{s};
    std::deque<std::pair<StateSet, Word>> q{{std::move(s), {}}};
    while (!q.empty()) {
        auto [cur, w] = q.front();
        q.pop_front();
        for (Sym a = 0; a < X.alphabet_size(); ++a) {
            StateSet t = X.step(cur, a);
            if (!t.any()) continue;
            Word w2 = w;
            w2.push_back(a);
            if (t.test(c0)) return w2;
            if (seen.insert(t).second) q.emplace_back(std::move(t), std::move(w2));
        }
    }
    throw HypothesisError("no route back to the anchor vertex");
}

// Lex-least closed-walk word at c0 of exactly the given length (caller
// guarantees feasibility via the walk-length table).
Word closed_walk_word(const Sft& X, Vertex c0, uint64_t len) {
    std::vector<StateSet> can(len + 1, StateSet(X.vertex_count()));
    can[len].set(c0);
    for (uint64_t t = len; t-- > 0;) {
        for (Vertex v = 0; v < X.vertex_count(); ++v)
            for (const Edge& e : X.adjacency()[v])
                if (can[t + 1].test(e.to)) { can[t].set(v); break; }
    }
    Word w;
    Vertex cur = c0;
    for (uint64_t t = 0; t < len; ++t) {
        for (const Edge& e : X.adjacency()[cur])
            if (can[t + 1].test(e.to)) {
                w.push_back(e.sym);
                cur = e.to;
                break;
            }
    }
    if (w.size() != len) throw HypothesisError("no closed walk of the requested length");
    return w;
}

void append(Word& w, const Word& block, uint64_t copies = 1) {
    for (uint64_t i = 0; i < copies; ++i) w.insert(w.end(), block.begin(), block.end());
}

}  // namespace

PairWitness make_scrambled_pair(const Sft& X, uint32_t e_prox, const Dyadic& delta,
                                uint64_t horizon) {
    if (!is_transitive(X))
        throw HypothesisError("scrambled pair construction requires a transitive shift");
    if (is_finite_shift(X))
        throw HypothesisError("scrambled pair construction requires an infinite shift");
    if (delta.is_zero()) throw HypothesisError("apartness threshold must be positive");
    if (horizon > (uint64_t(1) << 22))
        throw HypothesisError("horizon too large for exact distance scans");

    const Vertex c0 = 0;
    const Word C = least_cycle_word(X, c0);
    auto branch = find_branch(X, c0);
    if (!branch) throw HypothesisError("no branching continuation found from the anchor");

    // Two same-length anchor loops differing at the branch symbol.
    StateSet anchor(X.vertex_count());
    anchor.set(c0);
    StateSet after_pre = X.read(anchor, branch->w_pre);
    Word e0 = branch->w_pre, e1 = branch->w_pre;
    e0.push_back(branch->a0);
    e1.push_back(branch->a1);
    append(e0, route_back(X, X.step(after_pre, branch->a0), c0));
    append(e1, route_back(X, X.step(after_pre, branch->a1), c0));

    // Pad the shorter loop so both excursions have one length.
    const uint64_t bound = std::max(e0.size(), e1.size()) +
                           4 * (X.vertex_count() + 2) * (X.vertex_count() + 2) + 64;
    std::vector<char> loop_ok(bound + 1, 0);
    {
        StateSet reach = anchor;
        loop_ok[0] = 1;
        for (uint64_t L = 1; L <= bound; ++L) {
            reach = X.step_any(reach);
            loop_ok[L] = reach.test(c0);
        }
    }
    uint64_t len_e = 0;
    for (uint64_t L = std::max(e0.size(), e1.size()); L <= bound; ++L)
        if (loop_ok[L - e0.size()] && loop_ok[L - e1.size()]) { len_e = L; break; }
    if (len_e == 0) throw HypothesisError("no common excursion length at the anchor");
    append(e0, closed_walk_word(X, c0, len_e - e0.size()));
    append(e1, closed_walk_word(X, c0, len_e - e1.size()));

    // Doubling agree blocks, long enough that the first one already certifies
    // the requested proximality exponent.
    const uint64_t g1 = e_prox / C.size() + 1;
    Word xw, yw;
    std::vector<uint64_t> block_starts;
    uint64_t g = g1;
    while (block_starts.size() < 2 || xw.size() < horizon) {
        block_starts.push_back(xw.size());
        append(xw, C, g);
        append(yw, C, g);
        append(xw, e0);
        append(yw, e1);
        if (g > (uint64_t(1) << 40)) break;  // defensive; horizon is capped anyway
        g *= 2;
    }

    PairWitness w;
    w.e_prox = e_prox;
    w.delta = delta;
    w.horizon = std::max<uint64_t>(horizon, xw.size());
    w.x = normalize(PointRep{xw, C});
    w.y = normalize(PointRep{yw, C});
    if (point_equal(w.x, w.y))
        throw HypothesisError("anchor excursions failed to separate the pair");

    for (uint64_t m : block_starts) {
        Dyadic d = dist(shift_point(w.x, m), shift_point(w.y, m));
        w.prox_times.push_back({m, d});
        if (m > 0) {
            Dyadic rx = dist(shift_point(w.x, m), w.x);
            Dyadic ry = dist(shift_point(w.y, m), w.y);
            w.recur_times.push_back({m, std::max(rx, ry)});
        }
    }
    // d(sigma^m x, sigma^m y) = 2^-(next disagreement after m, minus m), and
    // the words agree from their common end onward; one linear sweep suffices.
    {
        const uint64_t k = delta.exponent();
        size_t next = xw.size();
        std::vector<uint64_t> next_diff(xw.size() + 1);
        next_diff[xw.size()] = UINT64_MAX;
        for (size_t i = xw.size(); i-- > 0;) {
            if (xw[i] != yw[i]) next = i;
            next_diff[i] = next == xw.size() ? UINT64_MAX : next;
        }
        for (uint64_t m = 0; m <= w.horizon && m < xw.size(); ++m) {
            if (next_diff[m] == UINT64_MAX) break;
            const uint64_t gap = next_diff[m] - m;
            if (gap <= k) w.apart_times.push_back({m, Dyadic::pow2(static_cast<uint32_t>(gap))});
        }
    }

    bool prox_ok = false;
    for (const auto& td : w.prox_times)
        if (td.d < Dyadic::pow2(e_prox)) prox_ok = true;
    if (!prox_ok || w.apart_times.empty())
        throw HypothesisError("pair construction failed its own distance audit");
    return w;
}

bool strong_liyorke_check(const PairWitness& w, const Dyadic& eps) {
    if (point_equal(w.x, w.y)) return false;
    std::optional<uint64_t> first_prox;
    for (const auto& td : w.prox_times)
        if (td.d < eps && (!first_prox || td.time < *first_prox)) first_prox = td.time;
    if (!first_prox) return false;
    bool recur = false;
    for (const auto& td : w.recur_times)
        if (td.d < eps) { recur = true; break; }
    if (!recur) return false;
    for (const auto& td : w.apart_times)
        if (td.time > *first_prox && td.d >= eps) return true;
    return false;
}

std::optional<uint64_t> kronecker_times(const Sft& X, const std::vector<PointRep>& K,
                                        const std::vector<PointRep>& h, const Dyadic& eps,
                                        uint64_t horizon) {
    if (K.size() != h.size())
        throw HypothesisError("target map must assign one point per source point");
    for (size_t i = 0; i < K.size(); ++i)
        for (size_t j = i + 1; j < K.size(); ++j)
            if (point_equal(K[i], K[j]))
                throw HypothesisError("source points must be pairwise distinct");
    for (const PointRep& p : K)
        if (!point_legal(X, p)) throw HypothesisError("source point not in the shift");
    for (const PointRep& p : h)
        if (!point_legal(X, p)) throw HypothesisError("target point not in the shift");
    for (uint64_t k = 1; k <= horizon; ++k) {
        bool all = true;
        for (size_t i = 0; i < K.size(); ++i)
            if (!(dist(shift_point(K[i], k), h[i]) < eps)) { all = false; break; }
        if (all) return k;
    }
    return std::nullopt;
}

}  // namespace symchaos
