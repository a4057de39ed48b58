#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symchaos/sft.hpp"

namespace symchaos {

enum class Verdict { Yes, No, Unknown };
std::string verdict_str(Verdict v);

// Strongly connected components, in a deterministic order (by least vertex).
std::vector<std::vector<Vertex>> sccs(const Sft& X);

struct TransitivityReport {
    bool transitive = false;
    size_t scc_count = 0;
    // Present iff not transitive: ordered pair with no connecting path.
    std::optional<std::pair<Vertex, Vertex>> unreachable_pair;
};

struct ClosedWalk {
    std::vector<Vertex> vertices;  // v0 ... vk with vk == v0
    Word labels;
};

struct PeriodReport {
    uint64_t period = 0;
    // Two closed walks through a common vertex whose lengths have gcd == period.
    ClosedWalk walk_a, walk_b;
};

struct WeakMixingReport {
    bool weakly_mixing = false;       // verdict: tensor square strongly connected
    size_t square_vertices = 0;
    bool square_strongly_connected = false;
    bool transitive = false;          // cross-check inputs (aperiodicity equivalence)
    uint64_t period = 0;
};

struct DensePeriodicReport {
    Verdict verdict = Verdict::Unknown;
    bool transitive = false;
    bool infinite = false;
    // For each word of length <= probe, a periodic point through it (yes case).
    std::vector<std::pair<Word, PointRep>> through;
};

struct HittingSet {
    std::vector<uint64_t> members;  // n in [1, horizon] with [u] ∩ σ^-n [v] nonempty
    uint64_t horizon = 0;
    // Exact eventual membership once the reachable-set recurrence closes:
    // for n >= threshold, n is a member iff some member m >= threshold has
    // n ≡ m (mod period).
    struct Tail {
        uint64_t threshold, period;
    };
    std::optional<Tail> tail;
};

struct FilterLawReport {
    bool holds = false;
    bool u3_empty = false;  // U1 ∩ σ^-n U2 empty: inclusion vacuous
    std::vector<uint64_t> n3, n1, n2;
    std::optional<uint64_t> counterexample;
};

bool is_transitive(const Sft& X);
TransitivityReport transitivity_report(const Sft& X);

uint64_t period(const Sft& X);              // pre: transitive
PeriodReport period_report(const Sft& X);   // pre: transitive
// Residue class of each vertex modulo the period (BFS levels from vertex 0).
std::vector<uint32_t> period_classes(const Sft& X, uint64_t d);

bool is_totally_transitive(const Sft& X);   // transitive and period 1

// Verdict by direct construction: tensor square of the presentation strongly
// connected.  The report carries transitivity + period so the classical
// equivalence (transitive and aperiodic) is cross-checkable against it.
WeakMixingReport weak_mixing_report(const Sft& X);
bool is_weakly_mixing(const Sft& X);

// s^inf for every symbol s whose s-labeled subgraph has a cycle.
std::vector<PointRep> fixed_points(const Sft& X);
// One representative per orbit of least period exactly d (lex-least rotation).
std::vector<PointRep> periodic_points(const Sft& X, size_t d);

DensePeriodicReport dense_periodic_points(const Sft& X, size_t probe = 3);

HittingSet hitting_set(const Sft& X, const Word& u, const Word& v, uint64_t horizon);

// N(U3,U3) ⊆ N(U1,U1) ∩ N(U2,U2) for U3 = [u1] ∩ σ^-n [u2], up to horizon.
// The inclusion holds unconditionally; `holds == false` indicates a bug upstream.
FilterLawReport filter_law_check(const Sft& X, const Word& u1, const Word& u2, uint64_t n,
                                 uint64_t horizon);

// Independent certificate checks (fresh reachability scans, no Tarjan reuse).
bool verify_transitivity(const Sft& X, const TransitivityReport& r);
bool verify_period(const Sft& X, const PeriodReport& r);
bool verify_weak_mixing(const Sft& X, const WeakMixingReport& r);

}  // namespace symchaos
