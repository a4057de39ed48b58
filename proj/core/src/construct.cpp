#include "symchaos/construct.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pattern_search.hpp"
#include "symchaos/decide.hpp"
#include "symchaos/errors.hpp"
#include "symchaos/product.hpp"

namespace symchaos {

SFilter SFilter::parse(const std::string& desc) {
    SFilter f;
    f.desc = desc;
    if (desc == "all" || desc.empty()) {
        f.desc = "all";
        return f;
    }
    // Accepted residue-class syntax: k%<mod>==<rem>
    if (desc.rfind("k%", 0) != 0) throw ParseError("time filter must be \"all\" or \"k%m==r\"");
    auto eq = desc.find("==");
    if (eq == std::string::npos) throw ParseError("time filter must be \"all\" or \"k%m==r\"");
    try {
        size_t used = 0;
        f.mod = std::stoull(desc.substr(2, eq - 2), &used);
        if (used != eq - 2) throw ParseError("bad modulus in time filter");
        f.rem = std::stoull(desc.substr(eq + 2), &used);
        if (used != desc.size() - eq - 2) throw ParseError("bad residue in time filter");
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError("bad number in time filter");
    }
    if (f.mod == 0 || f.mod > 4096) throw ParseError("time filter modulus must be in [1, 4096]");
    if (f.rem >= f.mod) throw ParseError("time filter residue must be below the modulus");
    return f;
}

namespace {

uint64_t search_slack(const Sft& X) {
    uint64_t v = X.vertex_count() + 2;
    return 4 * v * v + 64;
}

// Exact number of legal length-len continuations after q (distinct words,
// counted on the determinized continuation).
uint64_t count_extensions(const Sft& X, const Word& q, uint64_t len) {
    StateSet start = X.read(X.all_states(), q);
    if (!start.any()) return 0;
    std::map<StateSet, uint64_t> front{{start, 1}};
    for (uint64_t i = 0; i < len; ++i) {
        std::map<StateSet, uint64_t> nxt;
        for (const auto& [s, c] : front)
            for (Sym a = 0; a < X.alphabet_size(); ++a) {
                StateSet t = X.step(s, a);
                if (t.any()) nxt[t] += c;
            }
        front = std::move(nxt);
    }
    uint64_t total = 0;
    for (const auto& [s, c] : front) total += c;
    return total;
}

size_t lcp(const Word& a, const Word& b) {
    size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
}

bool is_prefix(const Word& a, const Word& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

// Both pins of the child template: parent at 0 and parent again at k, with a
// free tail up to total length; nullopt when the two pins conflict.
std::optional<detail::Pattern> child_pattern(const Word& parent, uint64_t k, uint64_t total) {
    detail::Pattern pat(total, std::nullopt);
    for (size_t i = 0; i < parent.size(); ++i) pat[i] = parent[i];
    for (size_t i = 0; i < parent.size(); ++i) {
        auto& slot = pat[k + i];
        if (slot && *slot != parent[i]) return std::nullopt;
        slot = parent[i];
    }
    return pat;
}

// Shortest common superstring-style cover: a single word containing every
// legal word of length len as a factor, grown greedily.
Word covering_word(const Sft& X, uint32_t n, size_t len) {
    auto targets = language(X, len);
    Word W = targets.front();
    auto covered = [&](const Word& q) {
        if (q.size() > W.size()) return false;
        for (size_t i = 0; i + q.size() <= W.size(); ++i)
            if (std::equal(q.begin(), q.end(), W.begin() + i)) return true;
        return false;
    };
    for (const Word& q : targets) {
        if (covered(q)) continue;
        bool placed = false;
        uint64_t t0 = W.size() >= len ? W.size() - len + 1 : 0;
        for (uint64_t t = t0; t <= W.size() + search_slack(X) && !placed; ++t) {
            detail::Pattern pat(std::max<uint64_t>(W.size(), t + len), std::nullopt);
            for (size_t i = 0; i < W.size(); ++i) pat[i] = W[i];
            bool ok = true;
            for (size_t i = 0; i < len && ok; ++i) {
                auto& slot = pat[t + i];
                if (slot && *slot != q[i]) ok = false;
                slot = q[i];
            }
            if (!ok) continue;
            auto words = detail::first_pattern_words(X, pat, 1);
            if (!words.empty()) {
                W = words.front();
                placed = true;
            }
        }
        if (!placed) throw ConstructionStuck(n, "covering superstring stalled");
    }
    return W;
}

}  // namespace

ConstructionCertificate build_stages(const Sft& X, uint32_t N, const BuildOptions& opts) {
    if (!is_transitive(X))
        throw HypothesisError("stage construction requires a transitive shift");
    if (is_finite_shift(X))
        throw HypothesisError("stage construction requires an infinite shift");
    if (opts.proximal) {
        auto pre = prox_density_check(X, 2, 2, uint64_t(1) << 12, 6, opts.seed);
        if (pre.satisfied_count != pre.samples)
            throw ConstructionStuck(0,
                                    "proximal density sampling failed; proximal routing "
                                    "looks impossible for this shift");
    }

    ConstructionCertificate cert;
    cert.s_desc = opts.S.desc;
    cert.proximal = opts.proximal;
    cert.transitive_leaves = opts.transitive_leaves;

    std::vector<Word> parents{Word{}};
    for (uint32_t n = 1; n <= N; ++n) {
        const uint32_t e = net_length(n);
        const uint64_t L_prev = parents.front().size();

        // Return time: least admissible k whose double-pin template yields at
        // least two children per parent.
        uint64_t k_max = L_prev + search_slack(X) + n;
        if (opts.S.mod) k_max = std::max(k_max, 2 * opts.S.mod + n);
        uint64_t k = 0;
        std::vector<Word> words;
        for (uint64_t cand = n; cand <= k_max && k == 0; ++cand) {
            if (!opts.S.contains(cand)) continue;
            const uint64_t total = cand + L_prev + e;
            std::vector<Word> chosen;
            bool ok = true;
            for (const Word& p : parents) {
                auto pat = child_pattern(p, cand, total);
                if (!pat) { ok = false; break; }
                auto two = detail::first_pattern_words(X, *pat, 2);
                if (two.size() < 2) { ok = false; break; }
                chosen.insert(chosen.end(), two.begin(), two.end());
            }
            if (ok) {
                k = cand;
                words = std::move(chosen);
            }
        }
        if (k == 0)
            throw ConstructionStuck(
                n, "no admissible return time within the search bound "
                   "(time filter too sparse or shift too constrained)");
        uint64_t L = k + L_prev + e;

        // Net coverage: add fresh words for uncovered length-e prefixes,
        // highest continuation count first, within the budget of n extras.
        std::set<Word> covered;
        for (const Word& w : words) covered.insert(Word(w.begin(), w.begin() + e));
        std::vector<Word> uncovered;
        for (const Word& q : language(X, e))
            if (!covered.count(q)) uncovered.push_back(q);
        std::vector<Word> picked = uncovered;
        if (picked.size() > n) {
            std::stable_sort(picked.begin(), picked.end(), [&](const Word& a, const Word& b) {
                return count_extensions(X, a, n - e) > count_extensions(X, b, n - e);
            });
            picked.resize(n);
        }
        for (const Word& q : picked) {
            detail::Pattern pat(L, std::nullopt);
            for (size_t i = 0; i < q.size(); ++i) pat[i] = q[i];
            words.push_back(detail::realize_pattern(X, pat));
        }

        StageFamily stage;
        stage.n = n;
        stage.k = k;
        stage.cover_len = e;
        stage.cover_full = uncovered.size() <= n;
        if (stage.cover_full) {
            stage.cover_agree = e;
        } else {
            size_t worst = e;
            for (const Word& q : uncovered) {
                bool hit = false;
                for (const Word& p : picked)
                    if (p == q) { hit = true; break; }
                if (hit) continue;
                size_t best = 0;
                for (const Word& w : words) best = std::max(best, lcp(q, w));
                worst = std::min(worst, best);
            }
            stage.cover_agree = static_cast<uint32_t>(worst);
        }

        if (opts.proximal) {
            auto hit = detail::least_common_block_time(X, words, e, 1, L + search_slack(X));
            if (!hit) throw ConstructionStuck(n, "no common proximal target within horizon");
            auto [t, c] = *hit;
            if (t + e > L) {
                for (Word& w : words) {
                    detail::Pattern pat(t + e, std::nullopt);
                    for (size_t i = 0; i < w.size(); ++i) pat[i] = w[i];
                    for (size_t i = 0; i < e; ++i) pat[t + i] = c[i];
                    w = detail::realize_pattern(X, pat);
                }
                L = t + e;
            }
            stage.t = t;
        }

        if (opts.transitive_leaves && n == N) {
            Word W = covering_word(X, n, e);
            // One common bridge length from every word into the cover word.
            StateSet spell_w = X.spellers(W);
            std::vector<StateSet> fronts;
            for (const Word& w : words) fronts.push_back(X.read(X.all_states(), w));
            std::optional<uint64_t> bridge;
            for (uint64_t m = 0; m <= search_slack(X) && !bridge; ++m) {
                bool all = true;
                for (const StateSet& f : fronts)
                    if (!f.intersects(spell_w)) { all = false; break; }
                if (all) bridge = m;
                else
                    for (auto& f : fronts) f = X.step_any(f);
            }
            if (!bridge)
                throw ConstructionStuck(n, "no common bridge length into the covering word");
            for (Word& w : words) {
                detail::Pattern pat(L + *bridge + W.size(), std::nullopt);
                for (size_t i = 0; i < w.size(); ++i) pat[i] = w[i];
                for (size_t i = 0; i < W.size(); ++i) pat[L + *bridge + i] = W[i];
                w = detail::realize_pattern(X, pat);
            }
            L += *bridge + W.size();
        }

        stage.words = words;
        cert.stages.push_back(std::move(stage));
        parents = std::move(words);
    }

    cert.leaves = leaf_points(X, cert);
    for (uint32_t m = 1; m < N; ++m) {
        RigidityClaim claim;
        claim.level = m;
        for (uint32_t j = m + 1; j <= N; ++j) claim.time += cert.stages[j - 1].k;
        claim.agree = cert.stages[m - 1].words.front().size();
        claim.count = cert.stages[m - 1].words.size() << (N - m);
        cert.rigidity.push_back(claim);
    }
    if (opts.proximal && N >= 1) {
        cert.prox_time = cert.stages.back().t;
        cert.prox_agree = cert.stages.back().cover_len;
    }
    return cert;
}

StageCheck verify_stage(const Sft& X, const StageFamily& stage,
                        const std::vector<Word>& parent_words, uint32_t n,
                        const SFilter& S, bool expect_prox) {
    StageCheck c;
    const size_t a_prev = parent_words.size(), a = stage.words.size();
    c.counts = 2 * a_prev <= a && a <= 2 * a_prev + n;

    const uint32_t e = net_length(n);
    c.diam = true;
    for (const Word& w : stage.words)
        if (w.size() < e || !word_legal(X, w)) { c.diam = false; break; }

    c.disjoint = true;
    for (size_t i = 0; i < a && c.disjoint; ++i)
        for (size_t j = i + 1; j < a; ++j)
            if (is_prefix(stage.words[i], stage.words[j]) ||
                is_prefix(stage.words[j], stage.words[i])) {
                c.disjoint = false;
                break;
            }

    c.nesting = a >= 2 * a_prev;
    for (size_t i = 0; i < a_prev && c.nesting; ++i)
        for (size_t j : {2 * i, 2 * i + 1})
            if (j >= a || stage.words[j].size() <= parent_words[i].size() ||
                !is_prefix(parent_words[i], stage.words[j])) {
                c.nesting = false;
                break;
            }

    {
        std::set<Word> covered;
        for (const Word& w : stage.words)
            if (w.size() >= e) covered.insert(Word(w.begin(), w.begin() + e));
        size_t worst = e;
        bool full = true;
        for (const Word& q : language(X, e)) {
            if (covered.count(q)) continue;
            full = false;
            size_t best = 0;
            for (const Word& w : stage.words) best = std::max(best, lcp(q, w));
            worst = std::min(worst, best);
        }
        c.achieved_agree = static_cast<uint32_t>(worst);
        c.coverage = stage.cover_len == e && stage.cover_full == full &&
                     stage.cover_agree == c.achieved_agree;
    }

    c.returns = true;
    for (size_t i = 0; i < a_prev && c.returns; ++i)
        for (size_t j : {2 * i, 2 * i + 1}) {
            std::optional<Word> img;
            if (j < a) img = shift_image(stage.words[j], stage.k);
            if (!img || !is_prefix(parent_words[i], *img)) {
                c.returns = false;
                break;
            }
        }

    c.k_admissible = S.contains(stage.k) && stage.k >= n;
    for (const Word& p : parent_words) {
        if (!c.k_admissible) break;
        auto hs = hitting_set(X, p, p, stage.k);
        if (std::find(hs.members.begin(), hs.members.end(), stage.k) == hs.members.end())
            c.k_admissible = false;
    }

    if (expect_prox) {
        c.prox = stage.t.has_value();
        if (c.prox) {
            const uint64_t t = *stage.t;
            for (const Word& w : stage.words)
                if (t + e > w.size()) { c.prox = false; break; }
            if (c.prox)
                for (const Word& w : stage.words)
                    if (!std::equal(w.begin() + t, w.begin() + t + e,
                                    stage.words.front().begin() + t)) {
                        c.prox = false;
                        break;
                    }
        }
    }
    return c;
}

std::vector<PointRep> leaf_points(const Sft& X, const ConstructionCertificate& cert) {
    std::vector<PointRep> pts;
    if (cert.stages.empty()) return pts;
    for (const Word& w : cert.stages.back().words)
        pts.push_back(canonical_completion(X, w));
    return pts;
}

bool rigidity_check(const std::vector<PointRep>& points,
                    const std::vector<uint64_t>& times, const Dyadic& eps) {
    for (uint64_t t : times)
        for (const PointRep& p : points)
            if (!(dist(shift_point(p, t), p) < eps)) return false;
    return true;
}

bool proximality_check(const std::vector<PointRep>& points, uint64_t t, const Dyadic& eps) {
    std::vector<PointRep> shifted;
    shifted.reserve(points.size());
    for (const PointRep& p : points) shifted.push_back(shift_point(p, t));
    for (size_t i = 0; i < shifted.size(); ++i)
        for (size_t j = i + 1; j < shifted.size(); ++j)
            if (!(dist(shifted[i], shifted[j]) < eps)) return false;
    return true;
}

CertificateCheck verify_certificate(const Sft& X, const ConstructionCertificate& cert) {
    CertificateCheck out;
    SFilter S = SFilter::parse(cert.s_desc);
    std::vector<Word> parents{Word{}};
    for (size_t i = 0; i < cert.stages.size(); ++i) {
        out.stages.push_back(verify_stage(X, cert.stages[i], parents,
                                          static_cast<uint32_t>(i + 1), S, cert.proximal));
        parents = cert.stages[i].words;
    }

    out.leaves_ok = !cert.stages.empty() &&
                    cert.leaves.size() == cert.stages.back().words.size();
    if (out.leaves_ok) {
        const auto& words = cert.stages.back().words;
        for (size_t i = 0; i < cert.leaves.size() && out.leaves_ok; ++i) {
            if (!point_legal(X, cert.leaves[i])) out.leaves_ok = false;
            for (size_t t = 0; t < words[i].size() && out.leaves_ok; ++t)
                if (point_at(cert.leaves[i], t) != words[i][t]) out.leaves_ok = false;
            for (size_t j = i + 1; j < cert.leaves.size() && out.leaves_ok; ++j)
                if (point_equal(cert.leaves[i], cert.leaves[j])) out.leaves_ok = false;
        }
    }

    out.rigidity_ok = true;
    for (const RigidityClaim& claim : cert.rigidity) {
        if (claim.level < 1 || claim.level > cert.stages.size()) {
            out.rigidity_ok = false;
            break;
        }
        uint64_t expect = 0;
        for (size_t j = claim.level; j < cert.stages.size(); ++j) expect += cert.stages[j].k;
        const uint64_t expect_count = uint64_t(cert.stages[claim.level - 1].words.size())
                                      << (cert.stages.size() - claim.level);
        if (claim.time != expect ||
            claim.agree != cert.stages[claim.level - 1].words.front().size() ||
            claim.count != expect_count || claim.count > cert.leaves.size()) {
            out.rigidity_ok = false;
            break;
        }
        if (!Dyadic::pow2(claim.agree).less_than_inverse(claim.level)) {
            out.rigidity_ok = false;
            break;
        }
        for (uint64_t i = 0; i < claim.count; ++i) {
            const PointRep& x = cert.leaves[i];
            if (!(dist(shift_point(x, claim.time), x) <= Dyadic::pow2(claim.agree))) {
                out.rigidity_ok = false;
                break;
            }
        }
        if (!out.rigidity_ok) break;
    }

    out.prox_ok = !cert.proximal;
    if (cert.proximal && !cert.stages.empty() && cert.prox_time &&
        cert.stages.back().t == cert.prox_time &&
        cert.prox_agree == cert.stages.back().cover_len &&
        Dyadic::pow2(cert.prox_agree).less_than_inverse(cert.stages.size())) {
        out.prox_ok = true;
        for (size_t i = 0; i < cert.leaves.size() && out.prox_ok; ++i)
            for (size_t j = i + 1; j < cert.leaves.size(); ++j) {
                Dyadic d = dist(shift_point(cert.leaves[i], *cert.prox_time),
                                shift_point(cert.leaves[j], *cert.prox_time));
                if (!(d <= Dyadic::pow2(cert.prox_agree))) {
                    out.prox_ok = false;
                    break;
                }
            }
    }

    out.pass = out.leaves_ok && out.rigidity_ok && out.prox_ok;
    for (const StageCheck& sc : out.stages)
        if (!sc.all(cert.proximal)) out.pass = false;
    if (cert.stages.empty()) out.pass = true;  // vacuous certificate
    return out;
}

}  // namespace symchaos
