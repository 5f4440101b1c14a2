#pragma once

#include <cstddef>
#include <vector>

#include "sg/objective.hpp"
#include "sg/scheme.hpp"

namespace sg {

// Memory element of the window scheme, as an interned payload
// [i, j, alpha_0[0..k-1], ..., alpha_{l-1}[0..k-1]] with l = W/D:
//   i        steps since the last checkpoint, in [0, D-1];
//   j        checkpoints seen so far, capped at l-1;
//   alpha_r  reward accumulated since the r-th previous checkpoint,
//            component-wise, capped at maxr*(W-1).
// The initial element is (0, 0, 0, ..., 0).
struct WindowMemory {
    int W, D, ell, dim;
    long long cap;  // maxr * (W-1)

    explicit WindowMemory(const WindowObjective& phi);

    std::vector<int> initial() const;
    int i_of(const std::vector<int>& m) const { return m[0]; }
    int j_of(const std::vector<int>& m) const { return m[1]; }
    long long alpha(const std::vector<int>& m, int r, int d) const { return m[2 + r * dim + d]; }
};

// One step of the memory update when leaving state s: accumulates rho(s)
// into every open window (bounded addition), rotates on checkpoints.
std::vector<int> mem_update(const WindowMemory& wm, const WindowObjective& phi, int s,
                            const std::vector<int>& m);

// False iff a window closes at (s, m) -- i = D-1 and j = l-1 -- with total
// reward alpha_{l-1} + rho(s) outside [mu*W, nu*W]. True when no window
// closes.
bool window_check(const WindowMemory& wm, const WindowObjective& phi, const WindowSumBounds& b,
                  int s, const std::vector<int>& m);

// Permissive strategy scheme for one window objective: memory as above,
// constrainer and initial pairs cut down by the greatest fixed point of the
// pruning operator over all pairs reachable under the unconstrained update.
// Rewards must be non-negative stored integers (affine-shift first).
// Throws Error{TooLarge} if more than max_pairs pairs get materialized.
StrategyScheme build_scheme(const Game& g, const WindowObjective& phi,
                            std::size_t max_pairs = 20000000);

// Scheme for a conjunction: per-conjunct schemes combined by product_scheme.
StrategyScheme build_scheme(const Game& g, const MultiObjective& delta,
                            std::size_t max_pairs = 20000000);

}  // namespace sg
