#include "symchaos/classify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "symchaos/errors.hpp"
#include "symchaos/product.hpp"

namespace symchaos {

namespace {

void note(ChaosReport& r, const char* flag, std::string rule) {
    r.provenance.emplace_back(flag, std::move(rule));
}

void all_chaos_no(ChaosReport& r, const std::string& why) {
    for (const char* f : {"weakly_mixing", "devaney", "densely_uniformly_chaotic",
                          "uniformly_chaotic", "strong_liyorke", "liyorke"})
        note(r, f, why);
    r.weakly_mixing = r.devaney = Verdict::No;
    r.densely_uniformly_chaotic = r.uniformly_chaotic = Verdict::No;
    r.strong_liyorke = r.liyorke = Verdict::No;
}

}  // namespace

std::optional<Decomposition> decompose_periodic(const Sft& X) {
    if (!is_transitive(X)) return std::nullopt;
    const uint64_t d = period(X);
    if (d < 2) return std::nullopt;

    const auto cls = period_classes(X, d);
    std::vector<Vertex> class0;
    std::vector<int64_t> pos(X.vertex_count(), -1);
    for (Vertex v = 0; v < X.vertex_count(); ++v)
        if (cls[v] == 0) {
            pos[v] = static_cast<int64_t>(class0.size());
            class0.push_back(v);
        }

    // Every length-d path between class-0 vertices becomes one edge, labeled
    // by the block it spells.
    std::map<Word, Sym> block_index;
    std::vector<Word> blocks;
    std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
    std::set<std::tuple<Vertex, Word, Vertex>> seen;
    for (Vertex s : class0) {
        std::vector<std::pair<Vertex, Word>> frontier{{s, {}}};
        for (uint64_t step = 0; step < d; ++step) {
            std::vector<std::pair<Vertex, Word>> next;
            for (const auto& [v, w] : frontier)
                for (const Edge& e : X.adjacency()[v]) {
                    Word nw = w;
                    nw.push_back(e.sym);
                    next.emplace_back(e.to, std::move(nw));
                }
            frontier = std::move(next);
        }
        for (const auto& [v, w] : frontier) {
            if (!seen.insert({s, w, v}).second) continue;
            auto it = block_index.find(w);
            if (it == block_index.end()) {
                it = block_index.emplace(w, static_cast<Sym>(blocks.size())).first;
                blocks.push_back(w);
            }
            edges.emplace_back(static_cast<Vertex>(pos[s]), it->second,
                               static_cast<Vertex>(pos[v]));
        }
    }

    std::vector<std::string> alpha(blocks.size());
    std::vector<std::string> names(class0.size());
    for (size_t i = 0; i < blocks.size(); ++i) alpha[i] = "[" + word_str(X, blocks[i]) + "]";
    for (size_t i = 0; i < class0.size(); ++i) names[i] = X.vertex_names()[class0[i]];

    Decomposition dec{d, Sft::from_parts(std::move(alpha), std::move(names), std::move(edges)),
                      std::move(blocks)};
    dec.x0_transitive = is_transitive(dec.x0) ? Verdict::Yes : Verdict::No;
    dec.x0_has_fixed_point = fixed_points(dec.x0).empty() ? Verdict::No : Verdict::Yes;
    if (is_finite_shift(dec.x0))
        dec.x0_densely_uniformly_chaotic = Verdict::No;
    else if (dec.x0_transitive == Verdict::Yes &&
             (dec.x0_has_fixed_point == Verdict::Yes || period(dec.x0) == 1))
        dec.x0_densely_uniformly_chaotic = Verdict::Yes;
    return dec;
}

bool decomposition_covers(const Sft& X, const Decomposition& dec, size_t len) {
    if (dec.d == 0 || dec.block_words.empty()) return false;
    const size_t d = static_cast<size_t>(dec.d);
    const size_t m = (len + d - 1) / d + 1;  // enough blocks to cover offset + len

    std::set<Word> expanded;
    for (const Word& bw : language(dec.x0, m)) {
        Word full;
        for (Sym b : bw) {
            const Word& piece = dec.block_words[b];
            full.insert(full.end(), piece.begin(), piece.end());
        }
        for (size_t j = 0; j < d && j + len <= full.size(); ++j)
            expanded.insert(Word(full.begin() + j, full.begin() + j + len));
    }
    const auto direct = language(X, len);
    return expanded == std::set<Word>(direct.begin(), direct.end());
}

std::vector<std::string> implication_audit(const ChaosReport& r) {
    // A "yes" may not sit above a "no" anywhere downstream in the implication
    // DAG, so violations are checked against the reachability closure, not
    // just the direct edges.
    const std::pair<const char*, Verdict> flags[8] = {
        {"transitive", r.transitive},
        {"totally_transitive", r.totally_transitive},
        {"weakly_mixing", r.weakly_mixing},
        {"devaney", r.devaney},
        {"densely_uniformly_chaotic", r.densely_uniformly_chaotic},
        {"uniformly_chaotic", r.uniformly_chaotic},
        {"strong_liyorke", r.strong_liyorke},
        {"liyorke", r.liyorke},
    };
    static constexpr std::pair<int, int> kEdges[] = {
        {2, 4}, {4, 5}, {5, 6}, {6, 7},  // mixing down to li-yorke
        {3, 5},                          // devaney implies uniformly chaotic
        {2, 1}, {1, 0}, {3, 0},          // transitivity backbone
    };
    bool reach[8][8] = {};
    for (const auto& [a, b] : kEdges) reach[a][b] = true;
    for (int k = 0; k < 8; ++k)
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::vector<std::string> bad;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (reach[i][j] && flags[i].second == Verdict::Yes &&
                flags[j].second == Verdict::No)
                bad.push_back(std::string(flags[i].first) + " yes but " + flags[j].first +
                              " no");
    return bad;
}

ChaosReport classify(const Sft& X, size_t budget) {
    if (!X.surjective())
        throw NotSurjectiveError("classification requires a surjective shift presentation");

    ChaosReport r;
    r.finite = is_finite_shift(X);
    const bool trans = is_transitive(X);
    r.transitive = trans ? Verdict::Yes : Verdict::No;
    if (trans) {
        note(r, "transitive", "presentation strongly connected");
        r.period = period(X);
    }

    if (r.finite) {
        r.totally_transitive =
            (trans && r.period == 1) ? Verdict::Yes : Verdict::No;
        all_chaos_no(r, "finite shift");
        return r;
    }

    if (!trans) {
        r.totally_transitive = r.weakly_mixing = r.devaney = Verdict::No;
        note(r, "totally_transitive", "not transitive");
        note(r, "weakly_mixing", "not transitive");
        note(r, "devaney", "not transitive");
        return r;
    }

    if (r.period == 1) {
        r.totally_transitive = Verdict::Yes;
        note(r, "totally_transitive", "transitive with cycle gcd 1");
    } else {
        r.totally_transitive = Verdict::No;
    }

    r.weakly_mixing = is_weakly_mixing(X) ? Verdict::Yes : Verdict::No;
    if (r.weakly_mixing == Verdict::Yes)
        note(r, "weakly_mixing", "tensor square strongly connected");

    const auto dense = dense_periodic_points(X);
    r.devaney = dense.verdict;
    if (r.devaney == Verdict::Yes)
        note(r, "devaney", "transitive, infinite, periodic points dense");

    // Densely-uniform-chaos cascade, cheapest certificate first.
    const bool has_fixed = !fixed_points(X).empty();
    if (has_fixed) {
        r.densely_uniformly_chaotic = Verdict::Yes;
        note(r, "densely_uniformly_chaotic", "transitive with a fixed point");
    } else if (r.totally_transitive == Verdict::Yes) {
        // A finite presentation always carries a periodic point.
        r.densely_uniformly_chaotic = Verdict::Yes;
        note(r, "densely_uniformly_chaotic", "totally transitive with a periodic point");
    } else if (r.weakly_mixing == Verdict::Yes) {
        r.densely_uniformly_chaotic = Verdict::Yes;
        note(r, "densely_uniformly_chaotic", "weakly mixing");
    } else if (r.period == 1) {
        const auto crit = criterion_check(X, budget);
        if (crit.satisfied) {
            r.densely_uniformly_chaotic = Verdict::Yes;
            note(r, "densely_uniformly_chaotic",
                 "subsystem with transitive product found (" +
                     subsystem_kind_str(crit.witness->kind) + ")");
        }
    }

    if (r.densely_uniformly_chaotic == Verdict::Yes) {
        r.uniformly_chaotic = Verdict::Yes;
        note(r, "uniformly_chaotic", "implied by densely uniformly chaotic");
    } else if (r.period >= 2) {
        r.decomposition = decompose_periodic(X);
        if (r.decomposition &&
            r.decomposition->x0_densely_uniformly_chaotic == Verdict::Yes) {
            r.uniformly_chaotic = Verdict::Yes;
            note(r, "uniformly_chaotic",
                 "cyclic decomposition with a densely uniformly chaotic power component");
        }
    }
    if (r.uniformly_chaotic != Verdict::Yes && r.devaney == Verdict::Yes) {
        r.uniformly_chaotic = Verdict::Yes;
        note(r, "uniformly_chaotic", "implied by devaney chaos");
    }

    if (r.uniformly_chaotic == Verdict::Yes) {
        r.strong_liyorke = Verdict::Yes;
        note(r, "strong_liyorke", "implied by uniformly chaotic");
        r.liyorke = Verdict::Yes;
        note(r, "liyorke", "implied by strong li-yorke");
    }

    if (!implication_audit(r).empty())
        throw HypothesisError("classification produced an inconsistent report");
    return r;
}

}  // namespace symchaos
