#include "symchaos/product.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "pattern_search.hpp"
#include "symchaos/errors.hpp"

namespace symchaos {

std::string subsystem_kind_str(SubsystemKind k) {
    switch (k) {
        case SubsystemKind::FixedPoint: return "fixed_point";
        case SubsystemKind::PeriodicOrbit: return "periodic_orbit";
        case SubsystemKind::SccSubshift: return "scc_subshift";
        case SubsystemKind::Whole: return "whole";
    }
    return "?";
}

Sft product(const Sft& X, const Sft& Y) {
    const size_t na = X.alphabet_size(), nb = Y.alphabet_size();
    if (na * nb > 65535) throw ParseError("product alphabet would exceed the symbol range");
    std::vector<std::string> alpha;
    alpha.reserve(na * nb);
    for (size_t a = 0; a < na; ++a)
        for (size_t b = 0; b < nb; ++b)
            alpha.push_back("(" + X.alphabet()[a] + "," + Y.alphabet()[b] + ")");

    const size_t nu = X.vertex_count(), nv = Y.vertex_count();
    std::vector<std::string> names;
    names.reserve(nu * nv);
    for (size_t u = 0; u < nu; ++u)
        for (size_t v = 0; v < nv; ++v)
            names.push_back("(" + X.vertex_names()[u] + "," + Y.vertex_names()[v] + ")");

    std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
    for (Vertex u = 0; u < nu; ++u)
        for (const Edge& e : X.adjacency()[u])
            for (Vertex v = 0; v < nv; ++v)
                for (const Edge& f : Y.adjacency()[v])
                    edges.emplace_back(static_cast<Vertex>(u * nv + v),
                                       static_cast<Sym>(e.sym * nb + f.sym),
                                       static_cast<Vertex>(e.to * nv + f.to));
    // Every pair vertex keeps an out-edge, so the trim never bites.
    return Sft::from_parts(alpha, names, edges, Origin::ForbiddenWords);
}

bool subsystem_valid(const Sft& X, const Subsystem& Y) {
    const Sft& P = Y.presentation;
    if (Y.into_x.size() != P.vertex_count()) return false;
    for (Vertex v : Y.into_x)
        if (v >= X.vertex_count()) return false;
    for (Vertex u = 0; u < P.vertex_count(); ++u)
        for (const Edge& e : P.adjacency()[u]) {
            auto s = X.sym_index(P.alphabet()[e.sym]);
            if (!s) return false;
            const auto& adj = X.adjacency()[Y.into_x[u]];
            bool hit = false;
            for (const Edge& f : adj)
                if (f.sym == *s && f.to == Y.into_x[e.to]) { hit = true; break; }
            if (!hit) return false;
        }
    return point_legal(P, Y.anchor);
}

namespace {

// Least cycle walk in the relation v -> succ(v): start at the least vertex
// that lies on a cycle, follow least successors until the walk repeats.
std::vector<Vertex> least_cycle(const std::vector<std::vector<Vertex>>& succ) {
    const size_t n = succ.size();
    // Vertices on cycles: greatest set where every member keeps a successor.
    std::vector<char> alive(n, 1);
    bool change = true;
    while (change) {
        change = false;
        for (size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            bool any = false;
            for (Vertex w : succ[v])
                if (alive[w]) { any = true; break; }
            if (!any) { alive[v] = 0; change = true; }
        }
    }
    // alive vertices all have live successors; walking from one must cycle.
    Vertex start = 0;
    bool found = false;
    for (size_t v = 0; v < n && !found; ++v)
        if (alive[v]) { start = static_cast<Vertex>(v); found = true; }
    if (!found) return {};
    std::vector<Vertex> walk;
    std::vector<int64_t> seen_at(n, -1);
    Vertex cur = start;
    while (seen_at[cur] < 0) {
        seen_at[cur] = static_cast<int64_t>(walk.size());
        walk.push_back(cur);
        Vertex nxt = cur;
        bool got = false;
        for (Vertex w : succ[cur])
            if (alive[w]) { nxt = w; got = true; break; }
        if (!got) return {};
        cur = nxt;
    }
    return {walk.begin() + seen_at[cur], walk.end()};
}

// A concrete X-path u ~~w~~> v spelling w, as the edge-label-realizing vertex
// sequence (length |w|+1); empty when impossible.
std::vector<Vertex> path_spelling(const Sft& X, Vertex u, const Word& w, Vertex v) {
    const size_t L = w.size();
    std::vector<StateSet> back(L + 1, StateSet(X.vertex_count()));
    back[L].set(v);
    for (size_t t = L; t-- > 0;) {
        for (Vertex q = 0; q < X.vertex_count(); ++q)
            for (const Edge& e : X.adjacency()[q])
                if (e.sym == w[t] && back[t + 1].test(e.to)) { back[t].set(q); break; }
        if (!back[t].any()) return {};
    }
    if (!back[0].test(u)) return {};
    std::vector<Vertex> path{u};
    Vertex cur = u;
    for (size_t t = 0; t < L; ++t) {
        for (const Edge& e : X.adjacency()[cur])
            if (e.sym == w[t] && back[t + 1].test(e.to)) {
                cur = e.to;
                break;
            }
        path.push_back(cur);
    }
    return path;
}

// Cycle presentation: k vertices, edge i --labels[i]--> i+1 (mod k).
Subsystem make_cycle_subsystem(const Sft& X, SubsystemKind kind,
                               const std::vector<Vertex>& xs, const Word& labels,
                               PointRep anchor) {
    const size_t k = xs.size();
    std::vector<std::string> names;
    std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
    for (size_t i = 0; i < k; ++i) {
        names.push_back(X.vertex_names()[xs[i]] + "@" + std::to_string(i));
        edges.emplace_back(static_cast<Vertex>(i), labels[i],
                           static_cast<Vertex>((i + 1) % k));
    }
    Subsystem s;
    s.kind = kind;
    s.presentation = Sft::from_parts(X.alphabet(), names, edges, X.origin());
    s.into_x = xs;
    s.anchor = std::move(anchor);
    return s;
}

std::string edge_key(const Sft& X, const Subsystem& s) {
    std::set<std::tuple<Vertex, Sym, Vertex>> es;
    for (Vertex u = 0; u < s.presentation.vertex_count(); ++u)
        for (const Edge& e : s.presentation.adjacency()[u]) {
            auto sym = X.sym_index(s.presentation.alphabet()[e.sym]);
            es.emplace(s.into_x[u], sym ? *sym : Sym(0xffff), s.into_x[e.to]);
        }
    std::string key;
    for (auto& [a, b, c] : es)
        key += std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "|";
    return key;
}

}  // namespace

std::vector<Subsystem> enumerate_subsystems(const Sft& X, size_t budget) {
    std::vector<Subsystem> out;
    std::set<std::string> seen;
    auto push = [&](Subsystem s) {
        std::string key = edge_key(X, s);
        if (seen.insert(key).second) out.push_back(std::move(s));
    };

    // Fixed points: for each symbol, the least cycle of its one-label subgraph.
    for (Sym a = 0; a < X.alphabet_size(); ++a) {
        std::vector<std::vector<Vertex>> succ(X.vertex_count());
        for (Vertex u = 0; u < X.vertex_count(); ++u)
            for (const Edge& e : X.adjacency()[u])
                if (e.sym == a) succ[u].push_back(e.to);
        auto cyc = least_cycle(succ);
        if (cyc.empty()) continue;
        push(make_cycle_subsystem(X, SubsystemKind::FixedPoint, cyc,
                                  Word(cyc.size(), a), PointRep{{}, {a}}));
    }

    // Periodic orbits, by primitive period.
    for (size_t d = 2; d <= budget; ++d) {
        for (const PointRep& pp : periodic_points(X, d)) {
            const Word& w = pp.per;
            // v -> u whenever some path u ~~w~~> ... no: v ~~w~~> u.
            std::vector<std::vector<Vertex>> succ(X.vertex_count());
            for (Vertex v = 0; v < X.vertex_count(); ++v) {
                StateSet s(X.vertex_count());
                s.set(v);
                succ[v] = X.read(s, w).members();
            }
            auto cyc = least_cycle(succ);
            if (cyc.empty()) continue;
            std::vector<Vertex> xs;
            Word labels;
            for (size_t j = 0; j < cyc.size(); ++j) {
                auto seg = path_spelling(X, cyc[j], w, cyc[(j + 1) % cyc.size()]);
                if (seg.empty()) { xs.clear(); break; }
                xs.insert(xs.end(), seg.begin(), seg.end() - 1);
                labels.insert(labels.end(), w.begin(), w.end());
            }
            if (xs.empty()) continue;
            push(make_cycle_subsystem(X, SubsystemKind::PeriodicOrbit, xs, labels,
                                      PointRep{{}, w}));
        }
    }

    // Strictly smaller irreducible subgraphs: delete one vertex, keep each
    // strongly connected component that still carries edges.
    size_t scc_subs = 0;
    for (Vertex del = 0; del < X.vertex_count() && scc_subs < budget; ++del) {
        std::vector<std::vector<Vertex>> g(X.vertex_count());
        for (Vertex u = 0; u < X.vertex_count(); ++u) {
            if (u == del) continue;
            for (const Edge& e : X.adjacency()[u])
                if (e.to != del) g[u].push_back(e.to);
        }
        // Components of the deleted graph, via iterative Kosaraju.
        const size_t n = X.vertex_count();
        std::vector<Vertex> order;
        {
            std::vector<char> vis(n, 0);
            for (Vertex s0 = 0; s0 < n; ++s0) {
                if (vis[s0] || s0 == del) continue;
                std::vector<std::pair<Vertex, size_t>> st{{s0, 0}};
                vis[s0] = 1;
                while (!st.empty()) {
                    auto& [v, i] = st.back();
                    if (i < g[v].size()) {
                        Vertex w = g[v][i++];
                        if (!vis[w]) { vis[w] = 1; st.emplace_back(w, 0); }
                    } else {
                        order.push_back(v);
                        st.pop_back();
                    }
                }
            }
        }
        std::vector<std::vector<Vertex>> rg(n);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex w : g[u]) rg[w].push_back(u);
        std::vector<int64_t> comp_of(n, -1);
        std::vector<std::vector<Vertex>> comps;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            if (comp_of[*it] >= 0) continue;
            std::vector<Vertex> stack{*it}, comp;
            comp_of[*it] = static_cast<int64_t>(comps.size());
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                comp.push_back(v);
                for (Vertex w : rg[v])
                    if (comp_of[w] < 0) {
                        comp_of[w] = static_cast<int64_t>(comps.size());
                        stack.push_back(w);
                    }
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        std::sort(comps.begin(), comps.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        for (const auto& comp : comps) {
            if (scc_subs >= budget) break;
            // Keep only components where every vertex has an out-edge inside.
            std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
            std::vector<char> in_comp(n, 0);
            for (Vertex v : comp) in_comp[v] = 1;
            bool essential = true;
            for (Vertex v : comp) {
                bool any = false;
                for (const Edge& e : X.adjacency()[v])
                    if (in_comp[e.to]) {
                        any = true;
                        edges.emplace_back(
                            static_cast<Vertex>(std::lower_bound(comp.begin(), comp.end(), v) - comp.begin()),
                            e.sym,
                            static_cast<Vertex>(std::lower_bound(comp.begin(), comp.end(), e.to) - comp.begin()));
                    }
                if (!any) { essential = false; break; }
            }
            if (!essential || edges.empty()) continue;
            std::vector<std::string> names;
            for (Vertex v : comp) names.push_back(X.vertex_names()[v]);
            Subsystem s;
            s.kind = SubsystemKind::SccSubshift;
            s.presentation = Sft::from_parts(X.alphabet(), names, edges, X.origin());
            s.into_x = comp;
            s.anchor = canonical_completion(s.presentation, {});
            size_t before = seen.size();
            push(std::move(s));
            if (seen.size() > before) ++scc_subs;
        }
    }

    // The whole shift, last.
    {
        Subsystem s;
        s.kind = SubsystemKind::Whole;
        s.presentation = X;
        s.into_x.resize(X.vertex_count());
        std::iota(s.into_x.begin(), s.into_x.end(), 0);
        s.anchor = canonical_completion(X, {});
        push(std::move(s));
    }
    return out;
}

CriterionReport criterion_check(const Sft& X, size_t budget) {
    if (!is_transitive(X))
        throw HypothesisError("criterion check requires a transitive shift");
    if (is_finite_shift(X))
        throw HypothesisError("criterion check requires an infinite shift");
    CriterionReport rep;
    for (auto& Y : enumerate_subsystems(X, budget)) {
        ++rep.tried;
        Sft P = product(X, Y.presentation);
        if (is_transitive(P)) {
            rep.satisfied = true;
            rep.product_vertices = P.vertex_count();
            rep.product_strongly_connected = true;
            rep.witness = std::move(Y);
            return rep;
        }
    }
    return rep;
}

ProxDensityReport prox_density_check(const Sft& X, size_t tuple_size, uint32_t eps_exp,
                                     uint64_t horizon, size_t samples, uint64_t seed) {
    if (tuple_size == 0)
        throw HypothesisError("proximal density check needs a nonempty tuple");
    ProxDensityReport rep;
    rep.eps_exp = eps_exp;
    rep.horizon = horizon;
    rep.seed = seed;
    rep.samples = samples;

    std::mt19937_64 rng(seed);
    std::map<uint64_t, std::vector<Word>> lang_cache;
    auto lang_of = [&](uint64_t len) -> const std::vector<Word>& {
        auto it = lang_cache.find(len);
        if (it == lang_cache.end()) it = lang_cache.emplace(len, language(X, len)).first;
        return it->second;
    };

    const size_t want = static_cast<size_t>(eps_exp) + 1;
    for (size_t s = 0; s < samples; ++s) {
        ProxDensitySample smp;
        for (size_t i = 0; i < tuple_size; ++i) {
            uint64_t len = 1 + rng() % 3;
            const auto& lang = lang_of(len);
            smp.tuple.push_back(lang[rng() % lang.size()]);
        }
        auto hit = detail::least_common_block_time(X, smp.tuple, want, 0, horizon);
        if (hit) {
            smp.satisfied = true;
            smp.m = hit->first;
            smp.target = hit->second;
            for (const Word& u : smp.tuple) {
                detail::Pattern pat(std::max<size_t>(u.size(), smp.m + want),
                                    std::nullopt);
                for (size_t i = 0; i < u.size(); ++i) pat[i] = u[i];
                for (size_t i = 0; i < want; ++i) {
                    if (pat[smp.m + i] && *pat[smp.m + i] != smp.target[i])
                        throw HypothesisError("pattern is not realizable");
                    pat[smp.m + i] = smp.target[i];
                }
                smp.points.push_back(
                    canonical_completion(X, detail::realize_pattern(X, pat)));
            }
            ++rep.satisfied_count;
        }
        rep.detail.push_back(std::move(smp));
    }
    return rep;
}

std::string canonical_form(const Sft& X, bool allow_symbol_bijection) {
    const size_t n = X.vertex_count(), k = X.alphabet_size();
    if (n > 8) throw HypothesisError("canonical form is exhaustive and needs at most 8 vertices");
    if (allow_symbol_bijection && k > 6)
        throw HypothesisError("canonical form with symbol bijection needs at most 6 symbols");

    std::vector<Vertex> vperm(n);
    std::iota(vperm.begin(), vperm.end(), 0);
    std::string best;
    do {
        std::vector<Sym> sperm(k);
        std::iota(sperm.begin(), sperm.end(), 0);
        do {
            std::vector<std::tuple<Vertex, Sym, Vertex>> es;
            for (Vertex u = 0; u < n; ++u)
                for (const Edge& e : X.adjacency()[u])
                    es.emplace_back(vperm[u], sperm[e.sym], vperm[e.to]);
            std::sort(es.begin(), es.end());
            std::string enc;
            for (auto& [a, b, c] : es)
                enc += std::to_string(a) + "." + std::to_string(b) + "." +
                       std::to_string(c) + ";";
            if (best.empty() || enc < best) best = std::move(enc);
            if (!allow_symbol_bijection) break;
        } while (std::next_permutation(sperm.begin(), sperm.end()));
    } while (std::next_permutation(vperm.begin(), vperm.end()));
    return best;
}

}  // namespace symchaos
