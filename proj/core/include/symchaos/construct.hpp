#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symchaos/dyadic.hpp"
#include "symchaos/sft.hpp"

namespace symchaos {

// Membership predicate for the set of admissible return times: either all
// positive integers ("all") or a residue class ("k%m==r").
struct SFilter {
    std::string desc = "all";
    uint64_t mod = 0, rem = 0;  // mod == 0 means every positive integer

    bool contains(uint64_t k) const { return mod == 0 || k % mod == rem; }
    static SFilter parse(const std::string& desc);  // ParseError on bad syntax
};

// One refinement level: words all of one length, cylinders pairwise disjoint,
// the first 2*a_{n-1} words extending parent i at slots 2i-1 and 2i and
// returning into it after k steps; when t is present all cylinders land in a
// common block of length cover_len at offset t.
struct StageFamily {
    uint32_t n = 0;
    std::vector<Word> words;
    uint64_t k = 0;
    std::optional<uint64_t> t;
    uint32_t cover_len = 0;    // required net prefix length at this level
    bool cover_full = false;   // every legal cover_len-word prefixes a family word
    uint32_t cover_agree = 0;  // worst-case guaranteed prefix agreement with the family
};

struct RigidityClaim {
    uint32_t level = 0;   // ancestor level whose cylinder both points stay in
    uint64_t time = 0;    // composed return time: sum of k over deeper levels
    uint64_t agree = 0;   // guaranteed prefix agreement of x and its return
    // Leading leaves covered: descendants of this level's family.  Children
    // precede coverage words at every level, so these are the first
    // 2^(N-level) * a_level leaves; later-added families only back deeper
    // claims.
    uint64_t count = 0;
};

struct ConstructionCertificate {
    std::string s_desc = "all";
    bool proximal = false, transitive_leaves = false;
    std::vector<StageFamily> stages;  // levels 1..N
    std::vector<PointRep> leaves;     // one per final-level word
    std::vector<RigidityClaim> rigidity;
    std::optional<uint64_t> prox_time;  // final level's t
    uint32_t prox_agree = 0;            // block length shared at prox_time
};

struct BuildOptions {
    bool proximal = false;
    bool transitive_leaves = false;
    SFilter S{};
    uint64_t seed = 0;  // for the proximal-density pre-check sampling
};

// Depth-N refinement tower of cylinder families; deterministic (words are
// lexicographically least among admissible ones, times are least).
// pre: X transitive and infinite.
ConstructionCertificate build_stages(const Sft& X, uint32_t N, const BuildOptions& opts);

// Pass/fail per stage condition, recomputed from scratch (shares no logic
// with the builder).  Failures are data, not exceptions.
struct StageCheck {
    bool counts = false;     // 2*a_{n-1} <= a_n <= 2*a_{n-1}+n
    bool diam = false;       // words legal and long enough for diameter < 1/n
    bool disjoint = false;   // pairwise prefix-incomparable
    bool nesting = false;    // children strictly extend their parent
    bool coverage = false;   // every legal cover_len-word prefixes some word
    bool returns = false;    // shift by k maps each child cylinder into its parent
    bool k_admissible = false;  // k in S, k >= n, k a self-return time of each parent
    bool prox = false;       // t present and all words share a block there (when expected)
    uint32_t achieved_agree = 0;
    bool all(bool expect_prox) const {
        return counts && diam && disjoint && nesting && coverage && returns &&
               k_admissible && (!expect_prox || prox);
    }
};

StageCheck verify_stage(const Sft& X, const StageFamily& stage,
                        const std::vector<Word>& parent_words, uint32_t n,
                        const SFilter& S, bool expect_prox);

struct CertificateCheck {
    std::vector<StageCheck> stages;
    bool leaves_ok = false;     // leaves legal, distinct, in their word cylinders
    bool rigidity_ok = false;   // every rigidity claim recomputes exactly
    bool prox_ok = false;       // final-level proximality claim recomputes
    bool pass = false;
};

CertificateCheck verify_certificate(const Sft& X, const ConstructionCertificate& cert);

// One eventually periodic representative per final-level word; each lies in
// the cylinders of its whole ancestor chain.
std::vector<PointRep> leaf_points(const Sft& X, const ConstructionCertificate& cert);

// Every listed time returns every point to within eps of itself.
bool rigidity_check(const std::vector<PointRep>& points,
                    const std::vector<uint64_t>& times, const Dyadic& eps);

// The whole family is eps-clustered after t shifts.
bool proximality_check(const std::vector<PointRep>& points, uint64_t t, const Dyadic& eps);

}  // namespace symchaos
