#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symchaos/decide.hpp"
#include "symchaos/sft.hpp"

namespace symchaos {

// Synchronized product presentation of (X x Y, shift x shift): vertices are
// vertex pairs, an edge per pair of component edges, labeled by the pair of
// component labels.  Never empty for nonempty factors.
Sft product(const Sft& X, const Sft& Y);

enum class SubsystemKind { FixedPoint, PeriodicOrbit, SccSubshift, Whole };
std::string subsystem_kind_str(SubsystemKind k);

// A closed shift-invariant subset of X carried by its own presentation plus a
// label-preserving vertex map into X's graph (an orbit of the full shift has
// no literal subgraph presentation, so the map does the embedding work).
struct Subsystem {
    SubsystemKind kind = SubsystemKind::Whole;
    Sft presentation;
    std::vector<Vertex> into_x;
    PointRep anchor;  // a concrete point of the subsystem (cycle point)
};

// Every edge of the subsystem maps to an X-edge with the same label name.
bool subsystem_valid(const Sft& X, const Subsystem& Y);

// Deterministic order: fixed points, then periodic orbits by length (2..budget),
// then single-vertex-deleted SCC subshifts (at most budget of them), then X
// itself.  Duplicate presentations (same X-edge set) are dropped.
std::vector<Subsystem> enumerate_subsystems(const Sft& X, size_t budget);

struct CriterionReport {
    bool satisfied = false;
    std::optional<Subsystem> witness;
    size_t product_vertices = 0;
    bool product_strongly_connected = false;
    size_t tried = 0;
};

// Search for a subsystem Y with X x Y transitive.  `satisfied == false` only
// means none was found within the budget, never that none exists.
// pre: X transitive and infinite.
CriterionReport criterion_check(const Sft& X, size_t budget);

struct ProxDensitySample {
    std::vector<Word> tuple;
    bool satisfied = false;
    uint64_t m = 0;                // least common time
    Word target;                   // common block of length eps_exp+1 at offset m
    std::vector<PointRep> points;  // x_i in [u_i] with sigma^m x_i in [target]
};

struct ProxDensityReport {
    uint64_t samples = 0, satisfied_count = 0;
    uint32_t eps_exp = 0;
    uint64_t horizon = 0, seed = 0;
    std::vector<ProxDensitySample> detail;
};

// For sampled cylinder tuples, search a single time m <= horizon pushing one
// point from each cylinder into a common block of length eps_exp+1 (so the
// image diameter is < 2^-eps_exp).  Deterministic for a fixed seed.
ProxDensityReport prox_density_check(const Sft& X, size_t tuple_size, uint32_t eps_exp,
                                     uint64_t horizon, size_t samples, uint64_t seed);

// Canonical encoding under vertex permutation (and optionally a symbol
// bijection); exhaustive, for small presentations in tests.
std::string canonical_form(const Sft& X, bool allow_symbol_bijection);

}  // namespace symchaos
