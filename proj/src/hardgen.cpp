#include "sg/hardgen.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include "sg/error.hpp"

namespace sg {

namespace {

struct Builder {
    std::vector<Owner> owners;
    std::vector<std::pair<int, int>> edges;
    std::vector<long long> reward_tenths;  // original rewards, in tenths
    std::vector<GadgetRole> roles;
    std::vector<std::string> names;

    int add(Owner o, long long tenths, GadgetRole role, std::string name) {
        owners.push_back(o);
        reward_tenths.push_back(tenths);
        roles.push_back(role);
        names.push_back(std::move(name));
        return static_cast<int>(owners.size()) - 1;
    }
};

// z(j,k): 1 if x_k occurs positively in the clause (also when it occurs
// with both polarities), 0 if only negatively.
int polarity_choice(const Clause& c, int var) {
    for (int lit : c)
        if (lit == var) return 1;
    return 0;
}

std::vector<int> distinct_vars(const Clause& c) {
    std::vector<int> vars;
    for (int lit : c) vars.push_back(std::abs(lit));
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

ReductionInstance generate(const Qbf& psi) {
    const int n = psi.num_vars();
    if (n < 2 || n % 2 != 0)
        fail(ErrorKind::BadFormula, "balanced reduction needs an even number of variables >= 2");

    ReductionInstance inst;
    inst.encoded.num_vars = n;
    for (const Clause& c : drop_tautologies(psi.matrix).clauses) {
        if (distinct_vars(c).size() > 3)
            fail(ErrorKind::BadFormula, "clause with more than 3 distinct variables");
        inst.encoded.clauses.push_back(c);
    }
    std::size_t dropped = psi.matrix.clauses.size() - inst.encoded.clauses.size();
    if (dropped > 0)
        inst.notes.push_back(std::to_string(dropped) +
                             " tautological clause(s) dropped before gadget construction");
    const int m = static_cast<int>(inst.encoded.clauses.size());
    if (m == 0)
        fail(ErrorKind::BadFormula,
             "no clauses left to encode (the construction needs at least one clause gadget)");
    inst.n = n;
    inst.m = m;

    Builder b;
    // Assignment gadgets 0..m: chains s_j^1 .. s_j^n with a t-branch per
    // truth value; clause gadgets j >= 1 add a bonus branch r_j^{k,z} for
    // each variable of clause j.
    std::vector<std::vector<int>> s_state(m + 1, std::vector<int>(n + 1, -1));
    std::vector<std::vector<std::array<int, 2>>> t_state(
        m + 1, std::vector<std::array<int, 2>>(n + 1, {-1, -1}));
    std::vector<std::vector<int>> r_state(m + 1, std::vector<int>(n + 1, -1));
    std::vector<std::vector<int>> u_state(m + 1, std::vector<int>(2 * m + 1, -1));

    for (int j = 0; j <= m; ++j) {
        for (int i = 1; i <= n; ++i) {
            Owner owner = Owner::Box;
            if (j == 0 && psi.quants[i - 1] == Quant::ForAll) owner = Owner::Diamond;
            s_state[j][i] = b.add(owner, 0, {GadgetRole::AssignS, j, i, 0},
                                  "s" + std::to_string(j) + "_" + std::to_string(i));
            for (int z = 0; z <= 1; ++z)
                t_state[j][i][z] =
                    b.add(Owner::Box, z == 1 ? 10 : 0, {GadgetRole::AssignT, j, i, z},
                          "t" + std::to_string(j) + "_" + std::to_string(i) + "^" +
                              std::to_string(z));
        }
        if (j >= 1)
            for (int k : distinct_vars(inst.encoded.clauses[j - 1])) {
                int z = polarity_choice(inst.encoded.clauses[j - 1], k);
                r_state[j][k] = b.add(Owner::Box, z == 1 ? 11 : 1, {GadgetRole::ClauseR, j, k, z},
                                      "r" + std::to_string(j) + "_" + std::to_string(k) + "^" +
                                          std::to_string(z));
            }
        for (int l = 1; l <= 2 * m; ++l) {
            long long tenths = 0;
            if (j >= 1 && l == 2 * j - 1) tenths = -1;
            if (j >= 1 && l == 2 * j) tenths = 1;
            u_state[j][l] = b.add(Owner::Box, tenths, {GadgetRole::ForceU, j, 0, l},
                                  "u" + std::to_string(j) + "_" + std::to_string(l));
        }
    }

    for (int j = 0; j <= m; ++j) {
        for (int i = 1; i <= n; ++i) {
            for (int z = 0; z <= 1; ++z) {
                b.edges.emplace_back(s_state[j][i], t_state[j][i][z]);
                if (i < n) b.edges.emplace_back(t_state[j][i][z], s_state[j][i + 1]);
            }
            if (r_state[j][i] >= 0) {
                b.edges.emplace_back(s_state[j][i], r_state[j][i]);
                if (i < n) b.edges.emplace_back(r_state[j][i], s_state[j][i + 1]);
            }
        }
        // Into and out of the force chain.
        for (int z = 0; z <= 1; ++z) b.edges.emplace_back(t_state[j][n][z], u_state[j][1]);
        if (r_state[j][n] >= 0) b.edges.emplace_back(r_state[j][n], u_state[j][1]);
        for (int l = 1; l < 2 * m; ++l) b.edges.emplace_back(u_state[j][l], u_state[j][l + 1]);
        b.edges.emplace_back(u_state[j][2 * m], s_state[(j % m) + 1][1]);
    }

    inst.game = Game(b.owners, b.edges);
    validate_game(inst.game);
    inst.initial_state = s_state[0][1];
    inst.roles = std::move(b.roles);
    inst.state_names = std::move(b.names);

    // Expected state count: (m+1) assignment gadgets of 3n states, one
    // bonus state per clause variable, (m+1) force chains of 2m states.
    long long expected = 3LL * n * (m + 1) + 2LL * m * (m + 1);
    for (const Clause& c : inst.encoded.clauses)
        expected += static_cast<long long>(distinct_vars(c).size());
    if (expected != inst.game.num_states())
        fail(ErrorKind::BadFormula, "gadget state count mismatch");

    const int W = 2 * (n + m);
    RewardFunction rho;
    rho.name = "r";
    rho.dim = 1;
    rho.scale = 10;
    for (long long t : b.reward_tenths) rho.values.push_back({t});

    inst.objective_original.W = W;
    inst.objective_original.D = 1;
    inst.objective_original.rho = rho;
    inst.objective_original.mu = {Rat(Int(n), Int(2 * W))};
    inst.objective_original.nu = {Rat(Int(n), Int(2 * W)) + Rat(Int(1), Int(5 * W))};

    inst.shift_t = Rat(1, 10);
    inst.shift_c = 10;
    inst.objective = affine_shift(inst.objective_original, inst.shift_t, inst.shift_c);

    // Small-instance bookkeeping: W, D, maxr and the reduced bound
    // numerators/denominators should stay below the state count.
    auto check_small = [&](const char* tag, const Int& v) {
        if (v > inst.game.num_states())
            inst.notes.push_back(std::string("small-instance deviation: ") + tag + " = " +
                                 to_string(v) + " exceeds |S| = " +
                                 std::to_string(inst.game.num_states()));
    };
    check_small("W", Int(W));
    check_small("maxr", Int(inst.objective.rho.max_stored()));
    check_small("num(mu)", boost::multiprecision::abs(inst.objective.mu[0].numerator()));
    check_small("den(mu)", inst.objective.mu[0].denominator());
    check_small("num(nu)", boost::multiprecision::abs(inst.objective.nu[0].numerator()));
    check_small("den(nu)", inst.objective.nu[0].denominator());
    return inst;
}

}  // namespace

ReductionInstance gen_balanced_sat_instance(const Cnf& phi) {
    Qbf psi;
    psi.quants.assign(phi.num_vars, Quant::Exists);
    psi.matrix = phi;
    return generate(psi);
}

ReductionInstance gen_balanced_qbf_instance(const Qbf& psi) { return generate(psi); }

std::vector<int> assignment_strategy(const ReductionInstance& inst,
                                     const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != inst.n)
        fail(ErrorKind::BadInput, "assignment arity mismatch");
    const Game& g = inst.game;
    std::vector<int> choice(g.num_states(), -1);

    // Per clause gadget: the first variable whose bonus branch matches the
    // assignment (the clause-satisfaction detour).
    std::vector<int> bonus_var(inst.m + 1, -1);
    for (int s = 0; s < g.num_states(); ++s) {
        const GadgetRole& role = inst.roles[s];
        if (role.kind == GadgetRole::ClauseR && role.value == (assignment[role.var - 1] ? 1 : 0))
            if (bonus_var[role.gadget] < 0 || role.var < bonus_var[role.gadget])
                bonus_var[role.gadget] = role.var;
    }
    for (int s = 0; s < g.num_states(); ++s) {
        if (!g.is_box(s)) continue;
        const GadgetRole& role = inst.roles[s];
        if (role.kind == GadgetRole::AssignS) {
            int wanted = assignment[role.var - 1] ? 1 : 0;
            int pick = -1;
            for (int t : g.successors(s)) {
                const GadgetRole& tr = inst.roles[t];
                if (role.gadget >= 1 && tr.kind == GadgetRole::ClauseR &&
                    role.var == bonus_var[role.gadget] && tr.value == wanted)
                    pick = t;  // detour through the bonus state
            }
            if (pick < 0)
                for (int t : g.successors(s)) {
                    const GadgetRole& tr = inst.roles[t];
                    if (tr.kind == GadgetRole::AssignT && tr.value == wanted) pick = t;
                }
            choice[s] = pick;
        } else {
            choice[s] = g.successors(s)[0];  // chains are deterministic
        }
    }
    return choice;
}

WindowPathClass classify_window_path(const ReductionInstance& inst, const std::vector<int>& path) {
    const int W = inst.objective_original.W;
    if (static_cast<int>(path.size()) != W)
        fail(ErrorKind::NotAssignmentPath, "window path must have exactly W states");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!inst.game.has_edge(path[i], path[i + 1]))
            fail(ErrorKind::NotAssignmentPath, "window path leaves the edge relation");

    WindowPathClass out;
    out.assignment.assign(inst.n, false);
    std::vector<int> seen(inst.n + 1, 0);
    std::vector<int> gadgets;
    out.force_reward = Rat(0);
    out.total_reward = Rat(0);
    for (int s : path) {
        const GadgetRole& role = inst.roles[s];
        out.total_reward += inst.objective_original.rho.semantic(s);
        switch (role.kind) {
            case GadgetRole::AssignS:
                gadgets.push_back(role.gadget);
                break;
            case GadgetRole::AssignT:
                gadgets.push_back(role.gadget);
                ++seen[role.var];
                out.assignment[role.var - 1] = role.value == 1;
                out.count_t1 += role.value == 1;
                break;
            case GadgetRole::ClauseR:
                gadgets.push_back(role.gadget);
                ++seen[role.var];
                out.assignment[role.var - 1] = role.value == 1;
                out.count_r1 += role.value == 1;
                out.count_r0 += role.value == 0;
                break;
            case GadgetRole::ForceU:
                out.force_reward += inst.objective_original.rho.semantic(s);
                break;
        }
    }
    for (int i = 1; i <= inst.n; ++i)
        if (seen[i] != 1)
            fail(ErrorKind::NotAssignmentPath, "variable " + std::to_string(i) + " chosen " +
                                                   std::to_string(seen[i]) + " times in a window");
    std::sort(gadgets.begin(), gadgets.end());
    gadgets.erase(std::unique(gadgets.begin(), gadgets.end()), gadgets.end());
    out.gadgets_touched = static_cast<int>(gadgets.size());
    out.spans_two = out.gadgets_touched == 2 && out.force_reward == Rat(0);

    Rat recomputed = Rat(out.count_t1 + out.count_r1) +
                     Rat(out.count_r1 + out.count_r0, 10) + out.force_reward;
    if (recomputed != out.total_reward)
        fail(ErrorKind::NotAssignmentPath, "window reward decomposition mismatch");
    return out;
}

}  // namespace sg
