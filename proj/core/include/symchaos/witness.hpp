#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symchaos/dyadic.hpp"
#include "symchaos/sft.hpp"

namespace symchaos {

struct TimedDist {
    uint64_t time = 0;
    Dyadic d = Dyadic::zero();
};

// Finite-horizon scrambled-pair certificate.  The points are eventually
// periodic, so beyond the listed times the pair eventually merges; the
// contract is exactly the listed, recomputable distances.
struct PairWitness {
    PointRep x, y;
    std::vector<TimedDist> prox_times;   // doubling agree-block starts
    std::vector<TimedDist> apart_times;  // every time <= horizon with d >= delta
    std::vector<TimedDist> recur_times;  // d = max of the two self-return distances
    uint64_t horizon = 0;
    uint32_t e_prox = 0;
    Dyadic delta = Dyadic::one();
};

// Build x and y as interleavings  C^{g_1} E  C^{g_2} E  ...  (g doubling)
// where C is the least cycle at a fixed anchor vertex and the excursions E
// differ between x and y at one branch symbol; both close into the periodic
// tail C^infinity.  Proximal at block starts, apart at branch symbols,
// jointly recurrent at block starts.
// pre: X transitive and infinite; delta positive.
PairWitness make_scrambled_pair(const Sft& X, uint32_t e_prox, const Dyadic& delta,
                                uint64_t horizon);

// True iff the listed times show: a proximal time with d < eps, a joint
// recurrence time with d < eps, and an apart time with d >= eps after the
// first such proximal time — and the points differ.
bool strong_liyorke_check(const PairWitness& w, const Dyadic& eps);

// Least k in [1, horizon] with d(sigma^k K[i], h[i]) < eps for every i;
// nullopt means none found, never that none exists.
// pre: K pairwise distinct, h parallel to K, all points legal in X.
std::optional<uint64_t> kronecker_times(const Sft& X, const std::vector<PointRep>& K,
                                        const std::vector<PointRep>& h, const Dyadic& eps,
                                        uint64_t horizon);

}  // namespace symchaos
