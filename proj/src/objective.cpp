#include "sg/objective.hpp"

#include <algorithm>

#include "sg/error.hpp"

namespace sg {

void validate_objective(const Game& g, const WindowObjective& phi) {
    if (phi.W < 1 || phi.D < 1) fail(ErrorKind::BadObjective, "W and D must be positive");
    if (phi.W % phi.D != 0) fail(ErrorKind::BadObjective, "D must divide W");
    validate_reward(g, phi.rho);
    if (static_cast<int>(phi.mu.size()) != phi.rho.dim ||
        static_cast<int>(phi.nu.size()) != phi.rho.dim)
        fail(ErrorKind::BadObjective, "bound dimension does not match the reward dimension");
}

void validate_objective(const Game& g, const MultiObjective& delta) {
    if (delta.conjuncts.empty()) fail(ErrorKind::BadObjective, "empty conjunction");
    for (const auto& phi : delta.conjuncts) validate_objective(g, phi);
}

Int memory_bound(const MultiObjective& delta) {
    Int m = 1;
    for (const auto& phi : delta.conjuncts) {
        Int base = Int(phi.rho.max_stored()) * phi.W;
        Int factor = phi.W;
        int exp = phi.rho.dim * (phi.W / phi.D);
        for (int i = 0; i < exp; ++i) factor *= base;
        m *= factor;
    }
    return m;
}

WindowSumBounds window_sum_bounds(const WindowObjective& phi) {
    WindowSumBounds b;
    // Window sums of stored integers live in [min*W, max*W]; clamping the
    // requested bounds to just outside that range preserves every verdict
    // and keeps the comparisons in machine integers.
    Int least = Int(phi.rho.min_stored()) * phi.W - 1;
    Int most = Int(phi.rho.max_stored()) * phi.W + 1;
    for (int d = 0; d < phi.rho.dim; ++d) {
        // sum/scale in [mu*W, nu*W]  <=>  ceil(mu*W*scale) <= sum <= floor(nu*W*scale)
        Int lo = rat_ceil(phi.mu[d] * phi.W * phi.rho.scale);
        Int hi = rat_floor(phi.nu[d] * phi.W * phi.rho.scale);
        b.lo.push_back(to_ll(std::clamp(lo, least, most)));
        b.hi.push_back(to_ll(std::clamp(hi, least, most)));
    }
    return b;
}

RewardFunction affine_shift(const RewardFunction& rho, const Rat& t, const Int& c) {
    if (c <= 0) fail(ErrorKind::BadReward, "shift factor must be positive");
    RewardFunction out;
    out.name = rho.name;
    out.dim = rho.dim;
    out.scale = 1;
    out.values.reserve(rho.values.size());
    for (const auto& v : rho.values) {
        std::vector<long long> row;
        row.reserve(v.size());
        for (long long x : v) {
            Rat shifted = (rat(x, rho.scale) + t) * Rat(c, 1);
            if (shifted.denominator() != 1)
                fail(ErrorKind::BadReward, "affine shift yields the non-integer " + to_string(shifted));
            if (shifted.numerator() < 0)
                fail(ErrorKind::BadReward, "affine shift yields the negative " + to_string(shifted));
            row.push_back(to_ll(shifted.numerator()));
        }
        out.values.push_back(std::move(row));
    }
    return out;
}

WindowObjective affine_shift(const WindowObjective& phi, const Rat& t, const Int& c) {
    WindowObjective out = phi;
    out.rho = affine_shift(phi.rho, t, c);
    for (int d = 0; d < phi.rho.dim; ++d) {
        out.mu[d] = (phi.mu[d] + t) * Rat(c, 1);
        out.nu[d] = (phi.nu[d] + t) * Rat(c, 1);
    }
    return out;
}

MultiObjective affine_shift(const MultiObjective& delta, const Rat& t, const Int& c) {
    MultiObjective out;
    for (const auto& phi : delta.conjuncts) out.conjuncts.push_back(affine_shift(phi, t, c));
    return out;
}

MeanPayoffObjective affine_shift(const MeanPayoffObjective& psi, const Rat& t, const Int& c) {
    MeanPayoffObjective out;
    out.rho = affine_shift(psi.rho, t, c);
    out.b = (psi.b + t) * Rat(c, 1);
    return out;
}

}  // namespace sg
