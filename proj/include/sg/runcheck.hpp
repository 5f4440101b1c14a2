#pragma once

#include <optional>
#include <vector>

#include "sg/objective.hpp"

namespace sg {

// Local window averages of one lasso against one window objective, reported
// for every checkpoint up to the horizon after which the value sequence is
// provably periodic (|prefix| + lcm(|cycle|, D) + W positions; periodicity
// follows from (position mod D, position within cycle) repeating).
struct CheckpointReport {
    int objective_index = 0;
    std::vector<std::vector<Rat>> values;     // per checkpoint, per dimension
    std::optional<int> first_violation;       // checkpoint index, if any
    bool satisfied() const { return !first_violation.has_value(); }
};

// Mean payoff of the lasso, component-wise: the cycle average (the limit
// average of an ultimately periodic run equals its cycle average).
std::vector<Rat> mp_of_lasso(const Lasso& l, const RewardFunction& rho);

// Long-run variance of the lasso, component-wise:
// sum over the cycle of (rho(s) - mp)^2 divided by the cycle length.
std::vector<Rat> va_of_lasso(const Lasso& l, const RewardFunction& rho);

CheckpointReport lmp_sequence(const Lasso& l, const WindowObjective& phi);

// True iff every conjunct's every checkpoint value (checkpoint 0 included)
// lies within its [mu, nu] bounds on the infinite run.
bool check_window_run(const Lasso& l, const MultiObjective& delta);

}  // namespace sg
