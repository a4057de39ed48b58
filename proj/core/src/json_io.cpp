#include "symchaos/json_io.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "symchaos/errors.hpp"

namespace symchaos {

namespace {

using nlohmann::json;  // std::map-backed: object keys serialize sorted

json word_json(const Sft& X, const Word& w) {
    if (X.single_char_alphabet()) return word_str(X, w);
    json arr = json::array();
    for (Sym s : w) arr.push_back(X.alphabet().at(s));
    return arr;
}

Word word_from_json(const Sft& X, const json& j) {
    if (j.is_string()) return parse_word(X, j.get<std::string>());
    if (!j.is_array()) throw ParseError("word must be a string or an array of symbols");
    Word w;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError("word entries must be symbol names");
        auto idx = X.sym_index(e.get<std::string>());
        if (!idx) throw ParseError("unknown symbol '" + e.get<std::string>() + "'");
        w.push_back(*idx);
    }
    return w;
}

json point_json(const Sft& X, const PointRep& p) {
    return json{{"pre", word_json(X, p.pre)}, {"per", word_json(X, p.per)}};
}

json meta_json(const RunMeta& m) {
    return json{{"version", m.version}, {"seed", m.seed}, {"input_hash", m.input_hash}};
}

json sft_json_obj(const Sft& X) {
    json edges = json::array();
    for (Vertex u = 0; u < X.vertex_count(); ++u)
        for (const Edge& e : X.adjacency()[u])
            edges.push_back(json::array(
                {X.vertex_names()[u], X.alphabet()[e.sym], X.vertex_names()[e.to]}));
    return json{{"alphabet", X.alphabet()},
                {"vertices", X.vertex_names()},
                {"edges", edges},
                {"surjective", X.surjective()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

uint64_t require_u64(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw ParseError(std::string("missing or non-integer field '") + key + "'");
    return j[key].get<uint64_t>();
}

bool require_bool(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_boolean())
        throw ParseError(std::string("missing or non-boolean field '") + key + "'");
    return j[key].get<bool>();
}

}  // namespace

std::string sft_to_json(const Sft& X) { return dump(sft_json_obj(X)); }

Sft sft_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid json: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("presentation must be a json object");

    std::vector<std::string> alphabet;
    if (j.contains("alphabet")) {
        if (!j["alphabet"].is_array()) throw ParseError("alphabet must be an array");
        for (const auto& a : j["alphabet"]) {
            if (!a.is_string()) throw ParseError("alphabet entries must be strings");
            alphabet.push_back(a.get<std::string>());
        }
    }

    if (j.contains("forbidden")) {
        if (alphabet.empty()) throw ParseError("forbidden-word form requires an alphabet");
        if (!j["forbidden"].is_array()) throw ParseError("forbidden must be an array");
        bool single = true;
        for (const auto& a : alphabet) single &= a.size() == 1;
        std::vector<Word> forbidden;
        for (const auto& f : j["forbidden"]) {
            Word w;
            if (f.is_string()) {
                if (!single)
                    throw ParseError("string words need a single-character alphabet");
                for (char c : f.get<std::string>()) {
                    auto it = std::find(alphabet.begin(), alphabet.end(), std::string(1, c));
                    if (it == alphabet.end())
                        throw ParseError(std::string("unknown symbol '") + c + "'");
                    w.push_back(static_cast<Sym>(it - alphabet.begin()));
                }
            } else if (f.is_array()) {
                for (const auto& s : f) {
                    if (!s.is_string()) throw ParseError("word entries must be symbol names");
                    auto it = std::find(alphabet.begin(), alphabet.end(), s.get<std::string>());
                    if (it == alphabet.end())
                        throw ParseError("unknown symbol '" + s.get<std::string>() + "'");
                    w.push_back(static_cast<Sym>(it - alphabet.begin()));
                }
            } else {
                throw ParseError("forbidden entries must be strings or symbol arrays");
            }
            forbidden.push_back(std::move(w));
        }
        return Sft::from_forbidden(std::move(alphabet), std::move(forbidden));
    }

    if (!j.contains("edges")) throw ParseError("presentation needs 'forbidden' or 'edges'");
    if (!j["edges"].is_array()) throw ParseError("edges must be an array");

    std::vector<std::string> vertices;
    if (j.contains("vertices")) {
        if (!j["vertices"].is_array()) throw ParseError("vertices must be an array");
        for (const auto& v : j["vertices"]) {
            if (!v.is_string()) throw ParseError("vertex names must be strings");
            vertices.push_back(v.get<std::string>());
        }
    }

    // Collect names appearing in edges when not declared up front.
    auto vertex_id = [&](const std::string& name, bool may_add) -> Vertex {
        auto it = std::find(vertices.begin(), vertices.end(), name);
        if (it != vertices.end()) return static_cast<Vertex>(it - vertices.begin());
        if (!may_add) throw ParseError("unknown vertex '" + name + "'");
        vertices.push_back(name);
        return static_cast<Vertex>(vertices.size() - 1);
    };
    const bool declared = !vertices.empty();

    std::vector<std::tuple<Vertex, std::string, Vertex>> raw;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
            !e[2].is_string())
            throw ParseError("edges must be [source, symbol, target] string triples");
        Vertex u = vertex_id(e[0].get<std::string>(), !declared);
        Vertex v = vertex_id(e[2].get<std::string>(), !declared);
        raw.emplace_back(u, e[1].get<std::string>(), v);
    }
    if (alphabet.empty()) {
        std::set<std::string> syms;
        for (const auto& [u, s, v] : raw) syms.insert(s);
        alphabet.assign(syms.begin(), syms.end());
    }
    std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
    for (const auto& [u, s, v] : raw) {
        auto it = std::find(alphabet.begin(), alphabet.end(), s);
        if (it == alphabet.end()) throw ParseError("unknown symbol '" + s + "'");
        edges.emplace_back(u, static_cast<Sym>(it - alphabet.begin()), v);
    }
    if (vertices.empty()) throw ParseError("graph form needs at least one vertex");
    return Sft::from_parts(std::move(alphabet), std::move(vertices), std::move(edges));
}

std::string analysis_to_json(const Sft& X, const RunMeta& meta) {
    json decisions = json::array();
    decisions.push_back(json{{"decision", "surjective"}, {"verdict", X.surjective()}});
    decisions.push_back(json{{"decision", "finite"}, {"verdict", is_finite_shift(X)}});

    const auto tr = transitivity_report(X);
    json jt{{"decision", "transitive"},
            {"verdict", tr.transitive},
            {"scc_count", tr.scc_count}};
    if (tr.unreachable_pair)
        jt["unreachable_pair"] = json::array({X.vertex_names()[tr.unreachable_pair->first],
                                              X.vertex_names()[tr.unreachable_pair->second]});
    decisions.push_back(std::move(jt));

    if (tr.transitive) {
        const auto pr = period_report(X);
        decisions.push_back(json{{"decision", "period"},
                                 {"value", pr.period},
                                 {"walk_lengths", json::array({pr.walk_a.labels.size(),
                                                               pr.walk_b.labels.size()})}});
        const auto wm = weak_mixing_report(X);
        decisions.push_back(json{{"decision", "weakly_mixing"},
                                 {"verdict", wm.weakly_mixing},
                                 {"square_vertices", wm.square_vertices},
                                 {"square_strongly_connected", wm.square_strongly_connected}});
    }

    json fixed = json::array();
    for (const auto& p : fixed_points(X)) fixed.push_back(point_json(X, p));
    decisions.push_back(json{{"decision", "fixed_points"}, {"points", std::move(fixed)}});

    const auto dense = dense_periodic_points(X);
    decisions.push_back(
        json{{"decision", "dense_periodic_points"}, {"verdict", verdict_str(dense.verdict)}});

    json counts = json::array();
    for (size_t L = 1; L <= 8; ++L) counts.push_back(language_count(X, L));
    decisions.push_back(json{{"decision", "word_counts"}, {"lengths_1_to_8", std::move(counts)}});

    return dump(json{{"meta", meta_json(meta)},
                     {"presentation",
                      json{{"vertices", X.vertex_count()},
                           {"edges", X.edge_count()},
                           {"alphabet", X.alphabet()}}},
                     {"decisions", std::move(decisions)}});
}

std::string hitting_to_json(const Sft& X, const Word& u, const Word& v, const HittingSet& hs,
                            const RunMeta& meta) {
    json j{{"meta", meta_json(meta)},
           {"u", word_json(X, u)},
           {"v", word_json(X, v)},
           {"horizon", hs.horizon},
           {"members", hs.members}};
    j["tail"] = hs.tail ? json{{"threshold", hs.tail->threshold}, {"period", hs.tail->period}}
                        : json(nullptr);
    return dump(j);
}

std::string criterion_to_json(const Sft& X, const CriterionReport& rep, const RunMeta& meta) {
    json j{{"meta", meta_json(meta)},
           {"satisfied", rep.satisfied},
           {"subsystems_tried", rep.tried},
           {"product_vertices", rep.product_vertices},
           {"product_strongly_connected", rep.product_strongly_connected}};
    if (rep.witness) {
        json names = json::array();
        for (Vertex v : rep.witness->into_x) names.push_back(X.vertex_names()[v]);
        j["witness"] = json{{"kind", subsystem_kind_str(rep.witness->kind)},
                            {"presentation", sft_json_obj(rep.witness->presentation)},
                            {"into_host", std::move(names)},
                            {"anchor", point_json(rep.witness->presentation,
                                                  rep.witness->anchor)}};
    } else {
        j["witness"] = nullptr;
    }
    return dump(j);
}

std::string certificate_to_json(const Sft& X, const ConstructionCertificate& cert,
                                const RunMeta& meta) {
    json stages = json::array();
    for (const auto& st : cert.stages) {
        json words = json::array();
        for (const auto& w : st.words) words.push_back(word_json(X, w));
        json js{{"level", st.n},
                {"words", std::move(words)},
                {"return_time", st.k},
                {"cover_len", st.cover_len},
                {"cover_full", st.cover_full},
                {"cover_agree", st.cover_agree}};
        js["target_time"] = st.t ? json(*st.t) : json(nullptr);
        stages.push_back(std::move(js));
    }
    json leaves = json::array();
    for (const auto& p : cert.leaves) leaves.push_back(point_json(X, p));
    json rigidity = json::array();
    for (const auto& rc : cert.rigidity)
        rigidity.push_back(json{{"level", rc.level},
                                {"time", rc.time},
                                {"agree", rc.agree},
                                {"leaf_count", rc.count}});
    json j{{"meta", meta_json(meta)},
           {"time_filter", cert.s_desc},
           {"proximal", cert.proximal},
           {"transitive_leaves", cert.transitive_leaves},
           {"stages", std::move(stages)},
           {"leaves", std::move(leaves)},
           {"rigidity", std::move(rigidity)},
           {"prox_agree", cert.prox_agree}};
    j["prox_time"] = cert.prox_time ? json(*cert.prox_time) : json(nullptr);
    return dump(j);
}

ConstructionCertificate certificate_from_json(const Sft& X, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid json: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("certificate must be a json object");
    ConstructionCertificate cert;
    try {
        if (!j.contains("time_filter") || !j["time_filter"].is_string())
            throw ParseError("missing time_filter");
        cert.s_desc = j["time_filter"].get<std::string>();
        cert.proximal = require_bool(j, "proximal");
        cert.transitive_leaves = require_bool(j, "transitive_leaves");
        if (!j.contains("stages") || !j["stages"].is_array())
            throw ParseError("missing stages array");
        for (const auto& js : j["stages"]) {
            StageFamily st;
            st.n = static_cast<uint32_t>(require_u64(js, "level"));
            if (!js.contains("words") || !js["words"].is_array())
                throw ParseError("stage missing words");
            for (const auto& w : js["words"]) st.words.push_back(word_from_json(X, w));
            st.k = require_u64(js, "return_time");
            if (js.contains("target_time") && !js["target_time"].is_null())
                st.t = js["target_time"].get<uint64_t>();
            st.cover_len = static_cast<uint32_t>(require_u64(js, "cover_len"));
            st.cover_full = require_bool(js, "cover_full");
            st.cover_agree = static_cast<uint32_t>(require_u64(js, "cover_agree"));
            cert.stages.push_back(std::move(st));
        }
        if (!j.contains("leaves") || !j["leaves"].is_array())
            throw ParseError("missing leaves array");
        for (const auto& jp : j["leaves"]) {
            if (!jp.is_object() || !jp.contains("pre") || !jp.contains("per"))
                throw ParseError("leaf points need pre and per");
            cert.leaves.push_back(
                normalize(PointRep{word_from_json(X, jp["pre"]), word_from_json(X, jp["per"])}));
        }
        if (!j.contains("rigidity") || !j["rigidity"].is_array())
            throw ParseError("missing rigidity array");
        for (const auto& jr : j["rigidity"])
            cert.rigidity.push_back(RigidityClaim{
                static_cast<uint32_t>(require_u64(jr, "level")), require_u64(jr, "time"),
                require_u64(jr, "agree"), require_u64(jr, "leaf_count")});
        if (j.contains("prox_time") && !j["prox_time"].is_null())
            cert.prox_time = j["prox_time"].get<uint64_t>();
        cert.prox_agree = static_cast<uint32_t>(require_u64(j, "prox_agree"));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
    return cert;
}

std::string certificate_check_to_json(const Sft& X, const ConstructionCertificate& cert,
                                      const CertificateCheck& check, const RunMeta& meta) {
    (void)X;
    json stages = json::array();
    for (size_t i = 0; i < check.stages.size(); ++i) {
        const auto& sc = check.stages[i];
        stages.push_back(json{{"level", i < cert.stages.size() ? cert.stages[i].n : 0},
                              {"counts", sc.counts},
                              {"diam", sc.diam},
                              {"disjoint", sc.disjoint},
                              {"nesting", sc.nesting},
                              {"coverage", sc.coverage},
                              {"returns", sc.returns},
                              {"return_time_admissible", sc.k_admissible},
                              {"proximal_target", sc.prox},
                              {"achieved_agree", sc.achieved_agree}});
    }
    return dump(json{{"meta", meta_json(meta)},
                     {"stages", std::move(stages)},
                     {"leaves_ok", check.leaves_ok},
                     {"rigidity_ok", check.rigidity_ok},
                     {"proximality_ok", check.prox_ok},
                     {"pass", check.pass}});
}

std::string witnesses_to_json(const Sft& X, const std::vector<PairWitness>& ws,
                              const RunMeta& meta) {
    auto times_json = [&](const std::vector<TimedDist>& ts) {
        json arr = json::array();
        for (const auto& td : ts)
            arr.push_back(json{{"time", td.time}, {"dist", td.d.str()}});
        return arr;
    };
    json arr = json::array();
    for (const auto& w : ws) {
        arr.push_back(json{{"x", point_json(X, w.x)},
                           {"y", point_json(X, w.y)},
                           {"e_prox", w.e_prox},
                           {"delta", w.delta.str()},
                           {"horizon", w.horizon},
                           {"prox_times", times_json(w.prox_times)},
                           {"apart_times", times_json(w.apart_times)},
                           {"recur_times", times_json(w.recur_times)}});
    }
    return dump(json{{"meta", meta_json(meta)}, {"witnesses", std::move(arr)}});
}

std::string ellis_to_json(const FiniteDynSys& sys, const EnvMonoid& env,
                          const IdealStructure& ideals, const std::vector<ProximalPair>& pairs,
                          const LawReport& laws, const RunMeta& meta) {
    auto onemap = [](const std::vector<uint32_t>& m) {
        json arr = json::array();
        for (uint32_t v : m) arr.push_back(v + 1);  // points are 1-indexed outside
        return arr;
    };
    json elements = json::array();
    for (size_t i = 0; i < env.elements.size(); ++i)
        elements.push_back(json{{"power", env.power[i]}, {"map", onemap(env.elements[i])}});
    json jideals = json::array();
    for (size_t i = 0; i < ideals.minimal_ideals.size(); ++i) {
        json groups = json::array();
        for (const auto& g : ideals.groups[i])
            groups.push_back(json{{"idempotent", g.idempotent}, {"members", g.members}});
        jideals.push_back(json{{"members", ideals.minimal_ideals[i]},
                               {"idempotents", ideals.idempotents[i]},
                               {"groups", std::move(groups)}});
    }
    json jpairs = json::array();
    for (const auto& p : pairs)
        jpairs.push_back(json{{"x", p.x + 1},
                              {"y", p.y + 1},
                              {"equalizer", p.equalizer},
                              {"ideal_uniform", p.ideal_uniform}});
    json jlaws{{"idempotent_exists", laws.idempotent_exists},
               {"absorbing_right", laws.absorbing_right},
               {"coset_groups", laws.coset_groups},
               {"coset_isomorphism", laws.coset_isomorphism},
               {"partition", laws.partition},
               {"pairing", laws.pairing},
               {"prox_forms_agree", laws.prox_forms_agree},
               {"prox_cell_minimal", laws.prox_cell_minimal},
               {"violations", laws.violations},
               {"pass", laws.pass()}};
    return dump(json{{"meta", meta_json(meta)},
                     {"size", sys.size()},
                     {"map", onemap(sys.map)},
                     {"surjective", sys.surjective()},
                     {"preperiod", env.preperiod},
                     {"period", env.period},
                     {"elements", std::move(elements)},
                     {"table", env.table},
                     {"adherence", adherence(env)},
                     {"ideals", std::move(jideals)},
                     {"proximal_pairs", std::move(jpairs)},
                     {"laws", std::move(jlaws)}});
}

std::string sweep_to_json(const SweepReport& rep, uint32_t max_size, const RunMeta& meta) {
    return dump(json{{"meta", meta_json(meta)},
                     {"max_size", max_size},
                     {"systems", rep.systems},
                     {"violations", rep.violations},
                     {"first_failures", rep.first_failures},
                     {"pass", rep.violations == 0}});
}

std::string chaos_to_json(const Sft& X, const ChaosReport& rep, const RunMeta& meta) {
    json flags{{"transitive", verdict_str(rep.transitive)},
               {"totally_transitive", verdict_str(rep.totally_transitive)},
               {"weakly_mixing", verdict_str(rep.weakly_mixing)},
               {"devaney", verdict_str(rep.devaney)},
               {"densely_uniformly_chaotic", verdict_str(rep.densely_uniformly_chaotic)},
               {"uniformly_chaotic", verdict_str(rep.uniformly_chaotic)},
               {"strong_liyorke", verdict_str(rep.strong_liyorke)},
               {"liyorke", verdict_str(rep.liyorke)}};
    json prov = json::array();
    for (const auto& [flag, rule] : rep.provenance)
        prov.push_back(json{{"flag", flag}, {"rule", rule}});
    json j{{"meta", meta_json(meta)},
           {"finite", rep.finite},
           {"period", rep.period},
           {"flags", std::move(flags)},
           {"provenance", std::move(prov)}};
    if (rep.decomposition) {
        const auto& dec = *rep.decomposition;
        json blocks = json::array();
        for (const auto& bw : dec.block_words) blocks.push_back(word_json(X, bw));
        j["decomposition"] = json{
            {"d", dec.d},
            {"component", sft_json_obj(dec.x0)},
            {"block_words", std::move(blocks)},
            {"component_transitive", verdict_str(dec.x0_transitive)},
            {"component_has_fixed_point", verdict_str(dec.x0_has_fixed_point)},
            {"component_densely_uniformly_chaotic",
             verdict_str(dec.x0_densely_uniformly_chaotic)},
            {"covers_words_to_8", decomposition_covers(X, dec, 8)}};
    } else {
        j["decomposition"] = nullptr;
    }
    return dump(j);
}

}  // namespace symchaos
