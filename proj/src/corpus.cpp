#include "sg/corpus.hpp"

#include <algorithm>
#include <set>

#include "sg/error.hpp"

namespace sg {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Game random_total_game(Rng& rng, int max_states, int max_extra_edges, double diamond_prob) {
    int n = uniform(rng, 1, max_states);
    std::vector<Owner> owners;
    std::bernoulli_distribution diamond(diamond_prob);
    for (int s = 0; s < n; ++s) owners.push_back(diamond(rng) ? Owner::Diamond : Owner::Box);
    std::set<std::pair<int, int>> edges;
    for (int s = 0; s < n; ++s) edges.emplace(s, uniform(rng, 0, n - 1));
    int extra = uniform(rng, 0, max_extra_edges);
    for (int i = 0; i < extra; ++i) edges.emplace(uniform(rng, 0, n - 1), uniform(rng, 0, n - 1));
    return Game(std::move(owners), {edges.begin(), edges.end()});
}

Game random_strongly_connected_graph(Rng& rng, int max_states) {
    int n = uniform(rng, 2, max_states);
    std::set<std::pair<int, int>> edges;
    // A random Hamiltonian cycle guarantees strong connectivity.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i) edges.emplace(perm[i], perm[(i + 1) % n]);
    int extra = uniform(rng, 0, 2 * n);
    for (int i = 0; i < extra; ++i) edges.emplace(uniform(rng, 0, n - 1), uniform(rng, 0, n - 1));
    return Game(std::vector<Owner>(n, Owner::Box), {edges.begin(), edges.end()});
}

RewardFunction random_reward(Rng& rng, const Game& g, long long max_value,
                             const std::string& name) {
    RewardFunction r;
    r.name = name;
    r.dim = 1;
    r.scale = 1;
    long long max_seen = 0;
    for (int s = 0; s < g.num_states(); ++s) {
        long long v = uniform(rng, 0, static_cast<int>(max_value));
        max_seen = std::max(max_seen, v);
        r.values.push_back({v});
    }
    if (max_seen == 0) r.values[uniform(rng, 0, g.num_states() - 1)][0] = std::max(1LL, max_value);
    return r;
}

WindowObjective random_window_objective(Rng& rng, const RewardFunction& rho,
                                        const std::vector<int>& window_sizes) {
    WindowObjective phi;
    phi.W = window_sizes[uniform(rng, 0, static_cast<int>(window_sizes.size()) - 1)];
    std::vector<int> divisors;
    for (int d = 1; d <= phi.W; ++d)
        if (phi.W % d == 0) divisors.push_back(d);
    phi.D = divisors[uniform(rng, 0, static_cast<int>(divisors.size()) - 1)];
    phi.rho = rho;
    long long top = rho.max_stored() * phi.W;
    long long a = uniform(rng, 0, static_cast<int>(top));
    long long b = uniform(rng, static_cast<int>(a), static_cast<int>(top));
    phi.mu = {Rat(Int(a), Int(phi.W) * rho.scale)};
    phi.nu = {Rat(Int(b), Int(phi.W) * rho.scale)};
    return phi;
}

Cnf random_cnf(Rng& rng, int num_vars, int max_clauses) {
    Cnf f;
    f.num_vars = num_vars;
    int m = uniform(rng, 1, max_clauses);
    for (int j = 0; j < m; ++j) {
        int size = uniform(rng, 1, 3);
        std::vector<int> vars(num_vars);
        for (int i = 0; i < num_vars; ++i) vars[i] = i + 1;
        std::shuffle(vars.begin(), vars.end(), rng);
        Clause c;
        for (int i = 0; i < size && i < num_vars; ++i)
            c.push_back(uniform(rng, 0, 1) ? vars[i] : -vars[i]);
        f.clauses.push_back(c);
    }
    return f;
}

Qbf random_qbf(Rng& rng, int num_vars, int max_clauses) {
    Qbf f;
    f.matrix = random_cnf(rng, num_vars, max_clauses);
    for (int i = 0; i < num_vars; ++i)
        f.quants.push_back(uniform(rng, 0, 1) ? Quant::ForAll : Quant::Exists);
    return f;
}

FrequencyVector random_circulation(Rng& rng, const Game& g, int walks, int max_walk_len) {
    std::vector<long long> counts(g.edges().size(), 0);
    long long total = 0;
    int attempts = 0;
    for (int w = 0; w < walks; ++w) {
        if (++attempts > 100 * walks + 1000)
            fail(ErrorKind::TooLarge, "random walks keep missing state 0");
        // Closed walk through state 0; retry until it comes back in time.
        std::vector<int> taken;
        int v = 0;
        for (int step = 0; step < max_walk_len; ++step) {
            const auto& succ = g.successors(v);
            int t = succ[uniform(rng, 0, static_cast<int>(succ.size()) - 1)];
            taken.push_back(g.edge_index(v, t));
            v = t;
            if (v == 0) break;
        }
        if (v != 0) {
            --w;  // walk did not close; resample
            continue;
        }
        for (int e : taken) ++counts[e];
        total += static_cast<long long>(taken.size());
    }
    FrequencyVector f;
    for (long long c : counts) f.f.emplace_back(Int(c), Int(total));
    return f;
}

std::vector<std::vector<int>> all_positional(const Game& g, Owner player) {
    std::vector<int> owned;
    for (int s = 0; s < g.num_states(); ++s)
        if (g.owner(s) == player) owned.push_back(s);
    std::vector<std::vector<int>> out;
    std::vector<std::size_t> pick(owned.size(), 0);
    while (true) {
        std::vector<int> strat(g.num_states(), -1);
        for (std::size_t i = 0; i < owned.size(); ++i)
            strat[owned[i]] = g.successors(owned[i])[pick[i]];
        out.push_back(std::move(strat));
        std::size_t i = 0;
        while (i < owned.size() && ++pick[i] == g.successors(owned[i]).size()) pick[i++] = 0;
        if (i == owned.size()) break;
        if (owned.empty()) break;
    }
    return out;
}

std::pair<Game, RewardFunction> bimodal_example() {
    // States A=0, B=1, C=2, D=3.
    std::vector<std::pair<int, int>> edges{{0, 1}, {1, 0}, {1, 2}, {2, 0},
                                           {2, 3}, {3, 2}, {3, 3}};
    Game g(std::vector<Owner>(4, Owner::Box), std::move(edges));
    RewardFunction r;
    r.name = "r";
    r.dim = 1;
    r.scale = 1;
    r.values = {{0}, {4}, {-10}, {1}};
    return {std::move(g), std::move(r)};
}

}  // namespace sg
