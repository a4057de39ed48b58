#pragma once

// Small standard presentations shared across test suites.

#include <string>
#include <tuple>
#include <vector>

#include "symchaos/sft.hpp"

namespace fixtures {

using symchaos::Sft;
using symchaos::Sym;
using symchaos::Vertex;
using symchaos::Word;

// All binary sequences; one vertex, two self-loops.
inline Sft full2() { return Sft::from_forbidden({"0", "1"}, {}); }

inline Sft full3() { return Sft::from_forbidden({"a", "b", "c"}, {}); }

// Binary sequences with no "11": two vertices, three edges.
inline Sft golden() { return Sft::from_forbidden({"0", "1"}, {Word{1, 1}}); }

// Exactly the d rotations of (s_0 s_1 ... s_{d-1})^inf.
inline Sft cycle(size_t d) {
    std::vector<std::string> alpha, names;
    std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
    for (size_t i = 0; i < d; ++i) {
        alpha.push_back(std::string(1, char('a' + i)));
        names.push_back("v" + std::to_string(i));
        edges.emplace_back(Vertex(i), Sym(i), Vertex((i + 1) % d));
    }
    return Sft::from_parts(alpha, names, edges);
}

// Two isolated fixed points: a^inf and b^inf.
inline Sft two_fixed_points() {
    return Sft::from_forbidden({"a", "b"}, {Word{0, 1}, Word{1, 0}});
}

// Transitive, infinite, period 2: two vertex classes, every hop offering two
// symbols.  No fixed point, no odd cycle.
inline Sft blocky2() {
    return Sft::from_parts({"p", "q", "r", "s"}, {"A", "B"},
                           {{0, 0, 1}, {0, 1, 1}, {1, 2, 0}, {1, 3, 0}});
}

// Transitive infinite period-d shift: a cycle of vertex classes where hop i
// carries `width[i]` parallel edges with fresh symbols.
inline Sft cyclic_classes(const std::vector<size_t>& width) {
    const size_t d = width.size();
    std::vector<std::string> alpha, names;
    std::vector<std::tuple<Vertex, Sym, Vertex>> edges;
    Sym next = 0;
    for (size_t i = 0; i < d; ++i) {
        names.push_back("c" + std::to_string(i));
        for (size_t j = 0; j < width[i]; ++j) {
            alpha.push_back(std::string(1, char('a' + j)) + std::to_string(i));
            edges.emplace_back(Vertex(i), next++, Vertex((i + 1) % d));
        }
    }
    return Sft::from_parts(alpha, names, edges);
}

// Golden-mean component plus an unreachable self-loop: infinite, not
// transitive, still surjective (every vertex keeps an in-edge).
inline Sft golden_plus_island() {
    return Sft::from_parts({"0", "1", "c"}, {"g0", "g1", "i"},
                           {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}, {2, 2, 2}});
}

// a b^inf has no preimage: vertex A has no in-edge.
inline Sft not_surjective() {
    return Sft::from_parts({"a", "b"}, {"A", "B"}, {{0, 0, 1}, {1, 1, 1}});
}

// Both vertices read the same symbol: presents the single point a^inf even
// though the graph has a 2-cycle.
inline Sft relabeled_point() {
    return Sft::from_parts({"a"}, {"A", "B"}, {{0, 0, 1}, {1, 0, 0}});
}

// A 2-cycle whose parallel labels make it a disguised full 2-shift: the
// graph has period 2 but the label language is everything.
inline Sft disguised_full2() {
    return Sft::from_parts({"a", "b"}, {"A", "B"},
                           {{0, 0, 1}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}});
}

}  // namespace fixtures
