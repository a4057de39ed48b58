#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "symchaos/classify.hpp"
#include "symchaos/construct.hpp"
#include "symchaos/corpus.hpp"
#include "symchaos/decide.hpp"
#include "symchaos/dot.hpp"
#include "symchaos/ellis.hpp"
#include "symchaos/errors.hpp"
#include "symchaos/json_io.hpp"
#include "symchaos/product.hpp"
#include "symchaos/sft.hpp"
#include "symchaos/version.hpp"
#include "symchaos/witness.hpp"

namespace {

using namespace symchaos;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitHypothesis = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        spit(out_path, text);
}

RunMeta meta_for(const std::string& input_bytes, uint64_t seed = 0) {
    return RunMeta{std::string(kVersion), seed, hash_hex(input_bytes)};
}

// Word from CLI text: comma-separated symbol names, or one character per
// symbol when the alphabet is single-character.
Word cli_word(const Sft& X, const std::string& text) {
    if (text.find(',') == std::string::npos) {
        if (X.single_char_alphabet()) return parse_word(X, text);
        auto idx = X.sym_index(text);
        if (!idx) throw ParseError("unknown symbol '" + text + "'");
        return Word{*idx};
    }
    Word w;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto idx = X.sym_index(part);
        if (!idx) throw ParseError("unknown symbol '" + part + "'");
        w.push_back(*idx);
    }
    return w;
}

FiniteDynSys parse_map(const std::string& text) {
    // "1:2,2:3,3:2" — 1-indexed, every point mapped exactly once.
    std::map<uint64_t, uint64_t> entries;
    std::stringstream ss(text);
    std::string part;
    uint64_t max_seen = 0;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw ParseError("map entries look like 'x:y'");
        uint64_t x = 0, y = 0;
        try {
            size_t used = 0;
            x = std::stoull(part.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("trailing");
            std::string rhs = part.substr(colon + 1);
            y = std::stoull(rhs, &used);
            if (used != rhs.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("map entries need integer 'x:y' pairs");
        }
        if (x == 0 || y == 0) throw ParseError("map points are 1-indexed");
        if (entries.count(x)) throw ParseError("point " + std::to_string(x) + " mapped twice");
        entries[x] = y;
        max_seen = std::max({max_seen, x, y});
    }
    if (entries.empty()) throw ParseError("empty map");
    FiniteDynSys sys;
    sys.map.resize(max_seen);
    for (uint64_t x = 1; x <= max_seen; ++x) {
        auto it = entries.find(x);
        if (it == entries.end())
            throw ParseError("point " + std::to_string(x) + " has no image");
        sys.map[x - 1] = static_cast<uint32_t>(it->second - 1);
    }
    return sys;
}

struct Args {
    std::string input, cert, out, u, v, map_text, s_filter = "all", dot_name = "shift";
    std::string witness_dir;
    uint64_t horizon = 4096, seed = 0;
    uint32_t levels = 4, budget = 6, eprox = 8, delta_exp = 1, pairs = 1, sweep = 0;
    size_t count = 10, alphabet_max = 4, vertex_max = 6;
    bool proximal = false, transitive_leaves = false, include_identity = false;
    std::string emit_product;
};

int run_analyze(const Args& a) {
    const auto bytes = slurp(a.input);
    const Sft X = sft_from_json(bytes);
    emit(analysis_to_json(X, meta_for(bytes)), a.out);
    return kExitOk;
}

int run_hit(const Args& a) {
    const auto bytes = slurp(a.input);
    const Sft X = sft_from_json(bytes);
    const Word u = cli_word(X, a.u), v = cli_word(X, a.v);
    emit(hitting_to_json(X, u, v, hitting_set(X, u, v, a.horizon), meta_for(bytes)), a.out);
    return kExitOk;
}

int run_criterion(const Args& a) {
    const auto bytes = slurp(a.input);
    const Sft X = sft_from_json(bytes);
    const auto rep = criterion_check(X, a.budget);
    if (!a.emit_product.empty()) {
        const Sft P = rep.witness ? product(X, rep.witness->presentation) : product(X, X);
        spit(a.emit_product, sft_to_json(P));
    }
    emit(criterion_to_json(X, rep, meta_for(bytes)), a.out);
    return kExitOk;
}

int run_construct(const Args& a) {
    const auto bytes = slurp(a.input);
    const Sft X = sft_from_json(bytes);
    BuildOptions opts;
    opts.proximal = a.proximal;
    opts.transitive_leaves = a.transitive_leaves;
    opts.S = SFilter::parse(a.s_filter);
    opts.seed = a.seed;
    const auto cert = build_stages(X, a.levels, opts);
    emit(certificate_to_json(X, cert, meta_for(bytes, a.seed)), a.out);
    return kExitOk;
}

int run_verify(const Args& a) {
    const auto cert_bytes = slurp(a.cert);
    const auto sft_bytes = slurp(a.input);
    const Sft X = sft_from_json(sft_bytes);
    const auto cert = certificate_from_json(X, cert_bytes);
    const auto check = verify_certificate(X, cert);
    emit(certificate_check_to_json(X, cert, check, meta_for(cert_bytes + sft_bytes)), a.out);
    return check.pass ? kExitOk : kExitHypothesis;
}

int run_witness(const Args& a) {
    const auto bytes = slurp(a.input);
    const Sft X = sft_from_json(bytes);
    std::vector<PairWitness> ws;
    for (uint32_t i = 0; i < a.pairs; ++i)
        ws.push_back(make_scrambled_pair(X, a.eprox + i, Dyadic::pow2(a.delta_exp), a.horizon));
    emit(witnesses_to_json(X, ws, meta_for(bytes)), a.out);
    return kExitOk;
}

int run_ellis(const Args& a) {
    if (a.sweep > 0) {
        const auto rep = sweep_law_check(a.sweep);
        emit(sweep_to_json(rep, a.sweep, meta_for("sweep:" + std::to_string(a.sweep))), a.out);
        return rep.violations == 0 ? kExitOk : kExitHypothesis;
    }
    const auto sys = parse_map(a.map_text);
    const auto env = enveloping(sys, a.include_identity);
    const auto ideals = ideal_structure(env);
    const auto pairs = proximal_pairs(sys, env, ideals);
    const auto laws = verify_semigroup_laws(sys, env);
    emit(ellis_to_json(sys, env, ideals, pairs, laws, meta_for(a.map_text)), a.out);
    return laws.pass() ? kExitOk : kExitHypothesis;
}

int run_classify(const Args& a) {
    const auto bytes = slurp(a.input);
    const Sft X = sft_from_json(bytes);
    const auto rep = classify(X, a.budget);
    emit(chaos_to_json(X, rep, meta_for(bytes)), a.out);
    if (!a.witness_dir.empty() && rep.densely_uniformly_chaotic == Verdict::Yes) {
        for (uint32_t i = 0; i < 3; ++i) {
            auto w = make_scrambled_pair(X, 8 + i, Dyadic::pow2(1), 4096);
            spit(a.witness_dir + "/pair" + std::to_string(i) + ".json",
                 witnesses_to_json(X, {w}, meta_for(bytes)));
        }
    }
    return implication_audit(rep).empty() ? kExitOk : kExitHypothesis;
}

int run_gen_corpus(const Args& a) {
    const auto entries = gen_corpus(a.seed, a.count, a.alphabet_max, a.vertex_max);
    const auto manifest = corpus_manifest_json(entries, a.seed, std::string(kVersion));
    if (!a.out.empty()) {
        for (const auto& e : entries) spit(a.out + "/" + e.name + ".json", sft_to_json(e.shift));
        spit(a.out + "/manifest.json", manifest);
    }
    std::cout << manifest;
    return kExitOk;
}

int run_dot(const Args& a) {
    const auto bytes = slurp(a.input);
    const Sft X = sft_from_json(bytes);
    emit(to_dot(X, a.dot_name), a.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact one-sided shift-space toolkit"};
    app.require_subcommand(1);
    Args a;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", a.input, "presentation json file")->required();
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("-o,--out", a.out, "write the report here instead of stdout");
    };

    auto* analyze = app.add_subcommand("analyze", "decision report for a presentation");
    add_input(analyze);
    add_out(analyze);

    auto* hit = app.add_subcommand("hit", "hitting times of two cylinders");
    add_input(hit);
    hit->add_option("-U", a.u, "first word")->required();
    hit->add_option("-V", a.v, "second word")->required();
    hit->add_option("-H,--horizon", a.horizon, "scan bound");
    add_out(hit);

    auto* criterion = app.add_subcommand("criterion", "search for a product-transitive subsystem");
    add_input(criterion);
    criterion->add_option("--budget", a.budget, "subsystem search budget");
    criterion->add_option("--emit-product", a.emit_product, "also write the product presentation");
    add_out(criterion);

    auto* construct = app.add_subcommand("construct", "build a nested family certificate");
    add_input(construct);
    construct->add_option("-N,--levels", a.levels, "number of stages");
    construct->add_flag("--proximal", a.proximal, "route every stage through a common block");
    construct->add_flag("--transitive-leaves", a.transitive_leaves,
                        "append a covering word to the final stage");
    construct->add_option("--S,--times", a.s_filter, "return-time filter, e.g. \"k%2==0\"");
    construct->add_option("--seed", a.seed, "seed recorded in the report");
    add_out(construct);

    auto* verify = app.add_subcommand("verify", "recheck a certificate against a presentation");
    verify->add_option("cert", a.cert, "certificate json file")->required();
    verify->add_option("input", a.input, "presentation json file")->required();
    add_out(verify);

    auto* witness = app.add_subcommand("witness", "emit scrambled-pair certificates");
    add_input(witness);
    witness->add_option("--pairs", a.pairs, "how many pairs");
    witness->add_option("--eprox", a.eprox, "first proximality exponent (distance < 2^-e)");
    witness->add_option("--delta", a.delta_exp, "apartness exponent (distance >= 2^-d)");
    witness->add_option("--horizon", a.horizon, "certificate horizon");
    add_out(witness);

    auto* ellis = app.add_subcommand("ellis", "iterate-monoid structure of a finite map");
    ellis->add_option("--map", a.map_text, "1-indexed map, e.g. \"1:2,2:3,3:2\"");
    ellis->add_option("--sweep", a.sweep, "check laws on all maps with |X| <= N");
    ellis->add_flag("--include-identity", a.include_identity, "adjoin the identity map");
    add_out(ellis);

    auto* classify_cmd = app.add_subcommand("classify", "chaos-property verdicts");
    add_input(classify_cmd);
    classify_cmd->add_option("--budget", a.budget, "criterion search budget");
    classify_cmd->add_option("--emit-witnesses", a.witness_dir,
                             "write scrambled pairs here when densely uniformly chaotic");
    add_out(classify_cmd);

    auto* gen = app.add_subcommand("gen-corpus", "random presentation corpus");
    gen->add_option("--seed", a.seed, "rng seed");
    gen->add_option("--count", a.count, "number of presentations");
    gen->add_option("--alphabet-max", a.alphabet_max, "largest alphabet");
    gen->add_option("--vertex-max", a.vertex_max, "largest vertex count");
    gen->add_option("--out", a.out, "directory for the generated files");

    auto* dot = app.add_subcommand("dot", "graphviz export");
    add_input(dot);
    dot->add_option("--name", a.dot_name, "graph name");
    add_out(dot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed()) return run_analyze(a);
        if (hit->parsed()) return run_hit(a);
        if (criterion->parsed()) return run_criterion(a);
        if (construct->parsed()) return run_construct(a);
        if (verify->parsed()) return run_verify(a);
        if (witness->parsed()) return run_witness(a);
        if (ellis->parsed()) {
            if (a.sweep == 0 && a.map_text.empty()) {
                std::cerr << "ellis needs --map or --sweep\n";
                return kExitUsage;
            }
            return run_ellis(a);
        }
        if (classify_cmd->parsed()) return run_classify(a);
        if (gen->parsed()) return run_gen_corpus(a);
        if (dot->parsed()) return run_dot(a);
    } catch (const ParseError& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "parse"}, {"reason", e.what()}}}}.dump()
                  << "\n";
        return kExitParse;
    } catch (const ConstructionStuck& e) {
        std::cerr << nlohmann::json{{"error",
                                     {{"type", "construction_stuck"},
                                      {"level", e.level},
                                      {"reason", e.what()}}}}
                         .dump()
                  << "\n";
        return kExitHypothesis;
    } catch (const HypothesisError& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "hypothesis"}, {"reason", e.what()}}}}
                         .dump()
                  << "\n";
        return kExitHypothesis;
    }
    return kExitUsage;
}
