#include "symchaos/ellis.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "symchaos/errors.hpp"

namespace symchaos {

bool FiniteDynSys::surjective() const {
    std::vector<char> hit(map.size(), 0);
    for (uint32_t v : map) {
        if (v >= map.size()) return false;
        hit[v] = 1;
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

uint32_t EnvMonoid::index_of_power(uint64_t n) const {
    if (n >= preperiod + period) n = preperiod + (n - preperiod) % period;
    for (uint32_t i = 0; i < power.size(); ++i)
        if (power[i] == n) return i;
    throw HypothesisError("power outside the stored iterate range");
}

EnvMonoid enveloping(const FiniteDynSys& sys, bool include_identity) {
    if (sys.size() == 0) throw HypothesisError("enveloping monoid needs a nonempty ground set");
    for (uint32_t v : sys.map)
        if (v >= sys.size()) throw ParseError("map target out of range");

    EnvMonoid env;
    std::map<std::vector<uint32_t>, uint64_t> first_power;  // map value -> least n
    std::vector<uint32_t> f = sys.map;
    uint64_t n = 1;
    while (true) {
        auto it = first_power.find(f);
        if (it != first_power.end()) {
            env.preperiod = it->second;
            env.period = n - it->second;
            break;
        }
        first_power.emplace(f, n);
        env.elements.push_back(f);
        env.power.push_back(n);
        std::vector<uint32_t> nf(sys.size());
        for (size_t x = 0; x < sys.size(); ++x) nf[x] = sys.map[f[x]];
        f = std::move(nf);
        ++n;
    }

    std::vector<uint32_t> id(sys.size());
    for (size_t x = 0; x < sys.size(); ++x) id[x] = static_cast<uint32_t>(x);
    if (include_identity && !first_power.count(id)) {
        env.elements.insert(env.elements.begin(), id);
        env.power.insert(env.power.begin(), 0);
        env.has_identity = true;
    }

    std::map<std::vector<uint32_t>, uint32_t> index;
    for (uint32_t i = 0; i < env.elements.size(); ++i) index.emplace(env.elements[i], i);
    env.table.assign(env.elements.size(), std::vector<uint32_t>(env.elements.size(), 0));
    for (uint32_t i = 0; i < env.elements.size(); ++i)
        for (uint32_t j = 0; j < env.elements.size(); ++j) {
            std::vector<uint32_t> comp(sys.size());
            for (size_t x = 0; x < sys.size(); ++x)
                comp[x] = env.elements[i][env.elements[j][x]];
            auto it = index.find(comp);
            if (it == index.end())
                throw HypothesisError("iterate monoid is not closed under composition");
            env.table[i][j] = it->second;
        }
    return env;
}

std::vector<uint32_t> adherence(const EnvMonoid& env) {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < env.power.size(); ++i)
        if (env.power[i] >= env.preperiod) out.push_back(i);
    return out;
}

namespace {

// Smallest left ideal containing p: {p} union E o p.
std::vector<uint32_t> left_ideal_of(const EnvMonoid& env, uint32_t p) {
    std::set<uint32_t> s{p};
    for (uint32_t q = 0; q < env.table.size(); ++q) s.insert(env.table[q][p]);
    return {s.begin(), s.end()};
}

}  // namespace

IdealStructure ideal_structure(const EnvMonoid& env) {
    IdealStructure out;
    std::set<std::vector<uint32_t>> seen;
    for (uint32_t p = 0; p < env.table.size(); ++p) {
        auto I = left_ideal_of(env, p);
        bool minimal = true;
        for (uint32_t q : I)
            if (left_ideal_of(env, q) != I) { minimal = false; break; }
        if (minimal && seen.insert(I).second) out.minimal_ideals.push_back(I);
    }
    for (const auto& I : out.minimal_ideals) {
        std::vector<uint32_t> J;
        for (uint32_t e : I)
            if (env.table[e][e] == e) J.push_back(e);
        std::vector<IdealGroup> gs;
        for (uint32_t v : J) {
            IdealGroup g;
            g.idempotent = v;
            std::set<uint32_t> members;
            for (uint32_t p : I) members.insert(env.table[v][p]);
            g.members.assign(members.begin(), members.end());
            gs.push_back(std::move(g));
        }
        out.idempotents.push_back(std::move(J));
        out.groups.push_back(std::move(gs));
    }
    return out;
}

std::vector<ProximalPair> proximal_pairs(const FiniteDynSys& sys, const EnvMonoid& env,
                                         const IdealStructure& ideals) {
    std::vector<ProximalPair> out;
    for (uint32_t x = 0; x < sys.size(); ++x)
        for (uint32_t y = x + 1; y < sys.size(); ++y) {
            std::optional<uint32_t> eq;
            for (uint32_t p = 0; p < env.elements.size() && !eq; ++p)
                if (env.elements[p][x] == env.elements[p][y]) eq = p;
            if (!eq) continue;
            ProximalPair pp;
            pp.x = x;
            pp.y = y;
            pp.equalizer = *eq;
            for (const auto& I : ideals.minimal_ideals) {
                bool uniform = true;
                for (uint32_t p : I)
                    if (env.elements[p][x] != env.elements[p][y]) { uniform = false; break; }
                if (uniform) { pp.ideal_uniform = true; break; }
            }
            out.push_back(pp);
        }
    return out;
}

std::vector<uint32_t> proximal_cell(const FiniteDynSys& sys, const EnvMonoid& env, uint32_t x) {
    std::vector<uint32_t> cell;
    for (uint32_t y = 0; y < sys.size(); ++y) {
        bool prox = false;
        for (const auto& el : env.elements)
            if (el[x] == el[y]) { prox = true; break; }
        if (prox) cell.push_back(y);
    }
    return cell;
}

namespace {

bool is_single_periodic_orbit(const FiniteDynSys& sys) {
    if (!sys.surjective()) return false;
    uint32_t cur = 0;
    for (size_t i = 1; i < sys.size(); ++i) {
        cur = sys.map[cur];
        if (cur == 0) return false;  // cycle shorter than the ground set
    }
    return sys.map[cur] == 0;
}

}  // namespace

LawReport verify_semigroup_laws(const FiniteDynSys& sys, const EnvMonoid& env) {
    LawReport rep;
    auto fail = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    const auto& tab = env.table;
    IdealStructure ideals = ideal_structure(env);

    for (uint32_t e = 0; e < tab.size(); ++e)
        if (tab[e][e] == e) rep.idempotent_exists = true;
    if (!rep.idempotent_exists) fail("no idempotent element");

    rep.absorbing_right = rep.coset_groups = rep.coset_isomorphism = rep.partition = true;
    for (size_t ii = 0; ii < ideals.minimal_ideals.size(); ++ii) {
        const auto& I = ideals.minimal_ideals[ii];
        const auto& J = ideals.idempotents[ii];
        if (J.empty()) {
            rep.coset_groups = false;
            fail("minimal ideal without idempotent");
            continue;
        }
        for (uint32_t v : J)
            for (uint32_t p : I)
                if (tab[p][v] != p) {
                    rep.absorbing_right = false;
                    fail("idempotent fails to absorb on the right");
                }
        std::set<uint32_t> covered;
        for (const auto& g : ideals.groups[ii]) {
            const uint32_t v = g.idempotent;
            std::set<uint32_t> fixed;
            for (uint32_t p : I)
                if (tab[v][p] == p) fixed.insert(p);
            if (fixed != std::set<uint32_t>(g.members.begin(), g.members.end())) {
                rep.coset_groups = false;
                fail("coset and fixed-point descriptions of vI disagree");
            }
            bool has_v = false;
            for (uint32_t m : g.members) has_v |= (m == v);
            if (!has_v) { rep.coset_groups = false; fail("idempotent missing from its coset"); }
            for (uint32_t a : g.members) {
                if (tab[v][a] != a || tab[a][v] != a) {
                    rep.coset_groups = false;
                    fail("coset identity fails");
                }
                bool inverse = false;
                for (uint32_t b : g.members)
                    if (tab[a][b] == v && tab[b][a] == v) inverse = true;
                if (!inverse) { rep.coset_groups = false; fail("coset element lacks an inverse"); }
                covered.insert(a);
            }
            // p -> w o p is a multiplicative bijection onto wI.
            for (const auto& h : ideals.groups[ii]) {
                const uint32_t w = h.idempotent;
                std::set<uint32_t> image;
                for (uint32_t a : g.members) image.insert(tab[w][a]);
                if (image != std::set<uint32_t>(h.members.begin(), h.members.end())) {
                    rep.coset_isomorphism = false;
                    fail("coset translation is not onto");
                }
                if (image.size() != g.members.size()) {
                    rep.coset_isomorphism = false;
                    fail("coset translation is not injective");
                }
                for (uint32_t a : g.members)
                    for (uint32_t b : g.members)
                        if (tab[w][tab[a][b]] != tab[tab[w][a]][tab[w][b]]) {
                            rep.coset_isomorphism = false;
                            fail("coset translation is not multiplicative");
                        }
            }
        }
        if (covered != std::set<uint32_t>(I.begin(), I.end())) {
            rep.partition = false;
            fail("cosets fail to cover the minimal ideal");
        }
        size_t total = 0;
        for (const auto& g : ideals.groups[ii]) total += g.members.size();
        if (total != I.size()) {
            rep.partition = false;
            fail("cosets overlap inside the minimal ideal");
        }
    }

    rep.pairing = true;
    for (size_t ii = 0; ii < ideals.minimal_ideals.size(); ++ii)
        for (size_t jj = 0; jj < ideals.minimal_ideals.size(); ++jj) {
            if (ii == jj) continue;
            for (uint32_t v : ideals.idempotents[ii]) {
                size_t matches = 0;
                for (uint32_t w : ideals.idempotents[jj])
                    if (tab[v][w] == w && tab[w][v] == v) ++matches;
                if (matches != 1) {
                    rep.pairing = false;
                    fail("equivalent idempotent not unique across ideals");
                }
            }
        }

    rep.prox_forms_agree = true;
    for (uint32_t x = 0; x < sys.size(); ++x)
        for (uint32_t y = x + 1; y < sys.size(); ++y) {
            bool some = false;
            for (const auto& el : env.elements)
                if (el[x] == el[y]) { some = true; break; }
            bool uniform = false;
            for (const auto& I : ideals.minimal_ideals) {
                bool all = true;
                for (uint32_t p : I)
                    if (env.elements[p][x] != env.elements[p][y]) { all = false; break; }
                if (all) { uniform = true; break; }
            }
            if (some != uniform) {
                rep.prox_forms_agree = false;
                fail("pointwise and ideal-uniform proximality disagree");
            }
        }

    rep.prox_cell_minimal = true;
    if (is_single_periodic_orbit(sys)) {
        std::set<uint32_t> min_idem;
        for (const auto& J : ideals.idempotents) min_idem.insert(J.begin(), J.end());
        for (uint32_t x = 0; x < sys.size(); ++x) {
            auto cell = proximal_cell(sys, env, x);
            std::set<uint32_t> via_idem;
            for (uint32_t v : min_idem) via_idem.insert(env.elements[v][x]);
            if (std::set<uint32_t>(cell.begin(), cell.end()) != via_idem) {
                rep.prox_cell_minimal = false;
                fail("proximal cell differs from idempotent images on a periodic orbit");
            }
        }
    }
    return rep;
}

SweepReport sweep_law_check(uint32_t max_size) {
    SweepReport rep;
    for (uint32_t k = 1; k <= max_size; ++k) {
        FiniteDynSys sys;
        sys.map.assign(k, 0);
        while (true) {
            ++rep.systems;
            auto laws = verify_semigroup_laws(sys, enveloping(sys));
            if (!laws.pass()) {
                ++rep.violations;
                if (rep.first_failures.size() < 5) {
                    std::string desc = "map";
                    for (uint32_t v : sys.map) desc += " " + std::to_string(v);
                    desc += ": " + (laws.violations.empty() ? std::string("unknown")
                                                            : laws.violations.front());
                    rep.first_failures.push_back(desc);
                }
            }
            // next map in lexicographic order
            size_t i = 0;
            while (i < k && sys.map[i] + 1 == k) sys.map[i++] = 0;
            if (i == k) break;
            ++sys.map[i];
        }
    }
    return rep;
}

}  // namespace symchaos
