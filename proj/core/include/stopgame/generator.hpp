#pragma once

#include <cstdint>

#include "stopgame/instance.hpp"

namespace stopgame {

// Deterministic random instance construction.  Child counts are uniform in
// 1..max_branching and edge probabilities are normalized uniforms.  Each
// payoff entry U^i(j, k) is the sum of two per-player random walks along
// the tree, one read at the level-j ancestor and one at the level-k
// ancestor, with increments bounded by lipschitz * step, clamped to
// [-scale, scale].  The empirical modulus then satisfies r(d) <= lipschitz
// * d on every grid distance d; lipschitz = 0 gives a field constant in
// the stop levels.  zero_sum sets player two's field to the negation of
// player one's.
struct GeneratorParams {
    std::uint64_t seed = 1;
    int horizon = 3;
    double step = 1.0;
    int max_branching = 2;
    double lipschitz = 1.0;
    double scale = 10.0;  // uniform payoff bound
    bool zero_sum = false;
};

Instance generate_instance(const GeneratorParams& params);

}  // namespace stopgame
