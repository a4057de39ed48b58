#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symchaos {

// A finite dynamical system: a total self-map on {0, ..., size-1}.
// Surjectivity is not required; non-surjective maps give the interesting
// proximal structure (finite surjective maps are bijections).
struct FiniteDynSys {
    std::vector<uint32_t> map;
    size_t size() const { return map.size(); }
    bool surjective() const;
};

// The monoid generated by the map under composition: the distinct iterates
// T^n, n >= 1 (an identity appears only if some iterate is one), plus the
// eventual-repeat shape T^{preperiod + period} = T^{preperiod}.
struct EnvMonoid {
    std::vector<std::vector<uint32_t>> elements;  // elements[i] as a table x -> elements[i][x]
    std::vector<uint64_t> power;                  // elements[i] == T^power[i]
    std::vector<std::vector<uint32_t>> table;     // table[i][j] = index of elements[i] o elements[j]
    uint64_t preperiod = 1;                       // least n0 with T^{n0+period} = T^{n0}
    uint64_t period = 1;
    bool has_identity = false;                    // true iff T^0 was adjoined

    uint32_t index_of_power(uint64_t n) const;    // n >= 1 reduced mod the tail cycle
};

// include_identity adjoins T^0 as an extra element (off by default: the
// monoid of positive iterates is the one with nontrivial idempotent shape).
EnvMonoid enveloping(const FiniteDynSys& sys, bool include_identity = false);

// Element indices occurring infinitely often in the iterate sequence:
// {T^n : n >= preperiod}.
std::vector<uint32_t> adherence(const EnvMonoid& env);

struct IdealGroup {
    uint32_t idempotent = 0;
    std::vector<uint32_t> members;  // the coset vI, sorted
};

struct IdealStructure {
    std::vector<std::vector<uint32_t>> minimal_ideals;  // sorted element indices
    std::vector<std::vector<uint32_t>> idempotents;     // per ideal, sorted
    std::vector<std::vector<IdealGroup>> groups;        // per ideal, per idempotent
};

IdealStructure ideal_structure(const EnvMonoid& env);

struct ProximalPair {
    uint32_t x = 0, y = 0;
    uint32_t equalizer = 0;  // element index p with p(x) == p(y)
    bool ideal_uniform = false;  // some minimal ideal equalizes at EVERY element
};

// All unordered pairs x < y some monoid element equalizes.
std::vector<ProximalPair> proximal_pairs(const FiniteDynSys& sys, const EnvMonoid& env,
                                         const IdealStructure& ideals);

// {x' : some element equalizes x and x'}; contains x itself.
std::vector<uint32_t> proximal_cell(const FiniteDynSys& sys, const EnvMonoid& env, uint32_t x);

struct LawReport {
    bool idempotent_exists = false;   // some element squares to itself
    bool absorbing_right = false;     // p o v == p for ideal idempotent v, p in its ideal
    bool coset_groups = false;        // each vI is a group with identity v, two descriptions agree
    bool coset_isomorphism = false;   // p -> w o p maps vI bijectively, multiplicatively onto wI
    bool partition = false;           // {vI} partitions each minimal ideal
    bool pairing = false;             // unique equivalent idempotent across ideal pairs
    bool prox_forms_agree = false;    // single-element and whole-ideal proximality coincide
    bool prox_cell_minimal = false;   // on one periodic orbit, cells equal idempotent images
    std::vector<std::string> violations;
    bool pass() const {
        return idempotent_exists && absorbing_right && coset_groups && coset_isomorphism &&
               partition && pairing && prox_forms_agree && prox_cell_minimal;
    }
};

// Exhaustive check of the monoid laws over the composition table.
// The laws hold for every genuine composition table; violations are
// reported as data so callers can surface them instead of asserting.
LawReport verify_semigroup_laws(const FiniteDynSys& sys, const EnvMonoid& env);

struct SweepReport {
    uint64_t systems = 0;
    uint64_t violations = 0;
    std::vector<std::string> first_failures;  // at most a handful, for diagnosis
};

// Run verify_semigroup_laws over every self-map on every ground set of size
// 1..max_size.
SweepReport sweep_law_check(uint32_t max_size);

}  // namespace symchaos
