#pragma once

#include <string>
#include <vector>

#include "sg/cnf.hpp"
#include "sg/objective.hpp"

namespace sg {

// Role of a state inside a generated balanced-SAT/QBF instance.
struct GadgetRole {
    enum Kind { AssignS, AssignT, ClauseR, ForceU } kind;
    int gadget = 0;  // assignment/clause gadget index 0..m, or force gadget index
    int var = 0;     // variable i for AssignS/AssignT/ClauseR
    int value = 0;   // chosen truth value for AssignT/ClauseR; chain index for ForceU
};

// Reduction output: a game whose window-stability verdict from
// initial_state equals the balanced satisfiability of the formula.
//
// Layout: an assignment gadget per clause (plus gadget 0 where the
// assignment is first chosen, with adversary-owned states on universally
// quantified variables), connected in a cycle through force chains of
// length 2m whose -1/10, +1/10 rewards sit at positions 2j-1, 2j. One
// gadget-plus-chain round is exactly W = 2(n+m) states long, so every
// window of the run covers each round position once and the sliding
// overlap forces all rounds to encode one fixed balanced assignment.
struct ReductionInstance {
    Game game;
    int initial_state = 0;
    int n = 0;  // variables
    int m = 0;  // clauses after dropping tautologies

    WindowObjective objective;           // shifted: integer rewards, scale 1
    WindowObjective objective_original;  // signed tenth-unit rewards, scale 10
    Rat shift_t;
    Int shift_c;

    std::vector<GadgetRole> roles;        // per state
    std::vector<std::string> state_names; // per state, e.g. "s1_2", "r2_3^1", "u0_4"
    Cnf encoded;                          // the formula actually encoded
    std::vector<std::string> notes;       // generation notes (drops, predicate checks)
};

// Graph instance (every state Box) for a balanced-3-SAT formula. Clauses
// may have at most 3 distinct variables; tautological clauses are dropped
// (they constrain nothing) and noted; at least one clause must remain and
// n must be even. Throws Error{BadFormula} otherwise.
ReductionInstance gen_balanced_sat_instance(const Cnf& phi);

// Game instance for a balanced QBF: identical construction, with the
// assignment states of universally quantified variables in gadget 0 owned
// by the adversary (clause gadgets stay Box-owned).
ReductionInstance gen_balanced_qbf_instance(const Qbf& psi);

// Deterministic positional choice realizing a fixed assignment on an
// instance: pick t-states by assignment value and detour through the first
// clause-satisfying bonus state of each clause gadget. Per-state successor
// (Diamond states get -1).
std::vector<int> assignment_strategy(const ReductionInstance& inst,
                                     const std::vector<bool>& assignment);

// Classification of one window (W consecutive states) of a run.
struct WindowPathClass {
    int gadgets_touched = 0;     // distinct assignment gadgets intersected
    bool spans_two = false;      // case with two gadgets and zero force-reward
    std::vector<bool> assignment;  // induced assignment, one truth value per variable
    long long count_t1 = 0;      // t-states asserting 1
    long long count_r1 = 0;      // bonus states asserting 1
    long long count_r0 = 0;      // bonus states asserting 0
    Rat force_reward;            // sum of force-chain rewards inside the window
    Rat total_reward;            // original-unit reward sum of the window
};

// Decomposes a window path: exactly one t/r state per variable (otherwise
// Error{NotAssignmentPath}), the induced assignment, the (t1, r1, r0,
// force) counts, and the reward identity
//   total = count_t1 + count_r1 + (count_r1 + count_r0)/10 + force.
WindowPathClass classify_window_path(const ReductionInstance& inst, const std::vector<int>& path);

}  // namespace sg
