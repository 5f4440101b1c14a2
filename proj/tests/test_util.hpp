#pragma once

#include <vector>

#include "sg/corpus.hpp"
#include "sg/game.hpp"
#include "sg/objective.hpp"

namespace sg::test {

inline RewardFunction reward(std::vector<long long> values, long long scale = 1,
                             const std::string& name = "r") {
    RewardFunction r;
    r.name = name;
    r.dim = 1;
    r.scale = scale;
    for (long long v : values) r.values.push_back({v});
    return r;
}

inline WindowObjective wobj(int W, int D, RewardFunction rho, Rat mu, Rat nu) {
    WindowObjective phi;
    phi.W = W;
    phi.D = D;
    phi.rho = std::move(rho);
    phi.mu = {std::move(mu)};
    phi.nu = {std::move(nu)};
    return phi;
}

inline Game box_game(int n, std::vector<std::pair<int, int>> edges) {
    return Game(std::vector<Owner>(n, Owner::Box), std::move(edges));
}

// Deterministic walk of a one-player game under a positional choice,
// folded into a lasso at the first repeated state.
inline Lasso walk_lasso(const Game& g, const std::vector<int>& choice, int start) {
    std::vector<int> first(g.num_states(), -1);
    std::vector<int> seq;
    int v = start;
    while (first[v] < 0) {
        first[v] = static_cast<int>(seq.size());
        seq.push_back(v);
        v = choice[v];
    }
    Lasso l;
    l.prefix.assign(seq.begin(), seq.begin() + first[v]);
    l.cycle.assign(seq.begin() + first[v], seq.end());
    return l;
}

// Independent window-sum evaluation: the average of rho over the W states
// starting at checkpoint cp*D of the unrolled run.
inline std::vector<Rat> brute_lmp(const Lasso& l, const RewardFunction& rho, int W, int D,
                                  long long cp) {
    std::vector<Int> sum(rho.dim, 0);
    for (int i = 0; i < W; ++i) {
        int s = l.at(cp * D + i);
        for (int d = 0; d < rho.dim; ++d) sum[d] += rho.values[s][d];
    }
    std::vector<Rat> out;
    for (int d = 0; d < rho.dim; ++d) out.emplace_back(sum[d], Int(W) * rho.scale);
    return out;
}

}  // namespace sg::test
