#include "sg/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <unordered_map>

#include "sg/error.hpp"

namespace sg {

namespace {

std::uint64_t payload_hash(const std::vector<int>& v) {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) {
        h ^= static_cast<std::uint32_t>(x);
        h *= 1099511628211ull;
    }
    return h;
}

struct PayloadHash {
    std::size_t operator()(const std::vector<int>& v) const {
        return static_cast<std::size_t>(payload_hash(v));
    }
};

// History payload layout: [state, then per objective a block
// [i, j, len, rewards...]] where i is the position modulo D, j the capped
// checkpoint counter, and the buffer holds the stored rewards (dim values
// per position, oldest first) of the last len = min(position+1, W)
// positions.
struct HistoryLayout {
    const Game& g;
    const std::vector<WindowObjective>& objs;
    std::vector<WindowSumBounds> bounds;
    std::vector<int> ell;

    HistoryLayout(const Game& g_, const std::vector<WindowObjective>& o) : g(g_), objs(o) {
        for (const auto& phi : objs) {
            bounds.push_back(window_sum_bounds(phi));
            ell.push_back(phi.W / phi.D);
        }
    }

    std::vector<int> fresh(int s) const {
        std::vector<int> p{s};
        for (const auto& phi : objs) {
            p.push_back(0);  // i
            p.push_back(0);  // j
            p.push_back(1);  // len
            for (int d = 0; d < phi.rho.dim; ++d)
                p.push_back(static_cast<int>(phi.rho.values[s][d]));
        }
        return p;
    }

    std::vector<int> step(const std::vector<int>& p, int t) const {
        std::vector<int> out{t};
        std::size_t pos = 1;
        for (std::size_t oi = 0; oi < objs.size(); ++oi) {
            const auto& phi = objs[oi];
            const int dim = phi.rho.dim;
            int i = p[pos], j = p[pos + 1], len = p[pos + 2];
            std::size_t buf = pos + 3;
            int ni = i + 1, nj = j;
            if (ni == phi.D) {
                ni = 0;
                nj = std::min(j + 1, ell[oi] - 1);
            }
            int nlen = std::min(len + 1, phi.W);
            out.push_back(ni);
            out.push_back(nj);
            out.push_back(nlen);
            std::size_t drop = (len == phi.W) ? static_cast<std::size_t>(dim) : 0;
            for (std::size_t q = buf + drop; q < buf + static_cast<std::size_t>(len) * dim; ++q)
                out.push_back(p[q]);
            for (int d = 0; d < dim; ++d) out.push_back(static_cast<int>(phi.rho.values[t][d]));
            pos = buf + static_cast<std::size_t>(len) * dim;
        }
        return out;
    }

    bool is_bad(const std::vector<int>& p) const {
        std::size_t pos = 1;
        for (std::size_t oi = 0; oi < objs.size(); ++oi) {
            const auto& phi = objs[oi];
            const int dim = phi.rho.dim;
            int i = p[pos], j = p[pos + 1], len = p[pos + 2];
            std::size_t buf = pos + 3;
            if (i == phi.D - 1 && j == ell[oi] - 1 && len == phi.W) {
                // A window closes here; its W positions are exactly the buffer.
                for (int d = 0; d < dim; ++d) {
                    long long sum = 0;
                    for (int q = 0; q < len; ++q) sum += p[buf + q * dim + d];
                    if (sum < bounds[oi].lo[d] || sum > bounds[oi].hi[d]) return true;
                }
            }
            pos = buf + static_cast<std::size_t>(len) * dim;
        }
        return false;
    }
};

}  // namespace

HistoryGame history_safety_game(const Game& g, const std::vector<WindowObjective>& objs,
                                const OracleCaps& caps) {
    for (const auto& phi : objs) {
        validate_objective(g, phi);
        if (!phi.rho.all_non_negative())
            fail(ErrorKind::BadReward, "history oracle requires non-negative stored rewards");
    }
    HistoryLayout layout(g, objs);

    HistoryGame h;
    std::unordered_map<std::vector<int>, int, PayloadHash> index;
    std::vector<std::vector<int>> payloads;
    auto intern = [&](std::vector<int>&& p) {
        auto [it, inserted] = index.try_emplace(std::move(p), static_cast<int>(payloads.size()));
        if (inserted) {
            if (payloads.size() >= caps.max_history_nodes)
                fail(ErrorKind::TooLarge, "history state cap exceeded");
            payloads.push_back(it->first);
            h.state_of.push_back(it->first[0]);
            h.bad.push_back(layout.is_bad(it->first));
            h.succ.emplace_back();
        }
        return it->second;
    };

    h.init_node.resize(g.num_states());
    for (int s = 0; s < g.num_states(); ++s) h.init_node[s] = intern(layout.fresh(s));

    for (int n = 0; n < static_cast<int>(payloads.size()); ++n) {
        if (h.bad[n]) continue;  // absorbing violation
        const std::vector<int> p = payloads[n];
        int s = p[0];
        for (int t : g.successors(s)) {
            int child = intern(layout.step(p, t));  // may reallocate h.succ
            h.succ[n].push_back(child);
        }
    }

    // Adversary attractor of the bad set; Box is safe everywhere else.
    int n = static_cast<int>(payloads.size());
    std::vector<std::vector<int>> pred(n);
    std::vector<int> out_count(n, 0);
    for (int v = 0; v < n; ++v) {
        for (int w : h.succ[v]) pred[w].push_back(v);
        out_count[v] = static_cast<int>(h.succ[v].size());
    }
    std::vector<char> attr(n, 0);
    std::deque<int> todo;
    for (int v = 0; v < n; ++v)
        if (h.bad[v]) {
            attr[v] = 1;
            todo.push_back(v);
        }
    while (!todo.empty()) {
        int w = todo.front();
        todo.pop_front();
        for (int v : pred[w]) {
            if (attr[v]) continue;
            if (!g.is_box(h.state_of[v]) || --out_count[v] == 0) {
                attr[v] = 1;
                todo.push_back(v);
            }
        }
    }
    h.box_safe.resize(n);
    for (int v = 0; v < n; ++v) h.box_safe[v] = !attr[v];
    return h;
}

std::vector<char> window_winning_set(const Game& g, const std::vector<WindowObjective>& objs,
                                     const OracleCaps& caps) {
    HistoryGame h = history_safety_game(g, objs, caps);
    std::vector<char> out(g.num_states());
    for (int s = 0; s < g.num_states(); ++s) out[s] = h.box_safe[h.init_node[s]];
    return out;
}

bool window_oracle(const Game& g, const WindowObjective& phi, int s, const OracleCaps& caps) {
    return window_winning_set(g, {phi}, caps)[s];
}

namespace {

// Karp's minimum cycle mean inside one strongly connected node set.
std::optional<Rat> karp_scc(const std::vector<int>& comp, const std::vector<std::vector<int>>& succ,
                            const std::vector<long long>& weight, long long scale) {
    int n = static_cast<int>(comp.size());
    std::vector<int> id(succ.size(), -1);
    for (int i = 0; i < n; ++i) id[comp[i]] = i;
    bool has_edge = false;
    for (int v : comp)
        for (int w : succ[v])
            if (id[w] >= 0) has_edge = true;
    if (!has_edge) return std::nullopt;

    const long long inf = std::numeric_limits<long long>::max() / 4;
    // F[k][v] = min weight of a k-edge walk from comp[0] to v inside the SCC,
    // with the weight of an edge (u, w) being weight[u].
    std::vector<std::vector<long long>> F(n + 1, std::vector<long long>(n, inf));
    F[0][0] = 0;
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i < n; ++i) {
            if (F[k - 1][i] >= inf) continue;
            int u = comp[i];
            for (int w : succ[u]) {
                int j = id[w];
                if (j < 0) continue;
                F[k][j] = std::min(F[k][j], F[k - 1][i] + weight[u]);
            }
        }
    std::optional<Rat> best;
    for (int i = 0; i < n; ++i) {
        if (F[n][i] >= inf) continue;
        std::optional<Rat> worst;
        for (int k = 0; k < n; ++k) {
            if (F[k][i] >= inf) continue;
            Rat mean(Int(F[n][i] - F[k][i]), Int(n - k));
            if (!worst || mean > *worst) worst = mean;
        }
        if (worst && (!best || *worst < *best)) best = worst;
    }
    if (best) *best /= Int(scale);
    return best;
}

}  // namespace

std::optional<Rat> min_reachable_cycle_mean(const std::vector<std::vector<int>>& succ,
                                            const std::vector<long long>& weight, long long scale,
                                            int from) {
    int n = static_cast<int>(succ.size());
    std::vector<char> reach(n, 0);
    std::deque<int> todo{from};
    reach[from] = 1;
    while (!todo.empty()) {
        int v = todo.front();
        todo.pop_front();
        for (int w : succ[v])
            if (!reach[w]) {
                reach[w] = 1;
                todo.push_back(w);
            }
    }
    std::vector<std::vector<int>> sub(n);
    for (int v = 0; v < n; ++v)
        if (reach[v])
            for (int w : succ[v])
                if (reach[w]) sub[v].push_back(w);

    // Tarjan over the restricted graph via the Game helper is overkill;
    // reuse a local Kosaraju-style pass.
    std::vector<int> order;
    std::vector<char> seen(n, 0);
    std::function<void(int)> dfs1 = [&](int v) {
        seen[v] = 1;
        for (int w : sub[v])
            if (!seen[w]) dfs1(w);
        order.push_back(v);
    };
    for (int v = 0; v < n; ++v)
        if (reach[v] && !seen[v]) dfs1(v);
    std::vector<std::vector<int>> rev(n);
    for (int v = 0; v < n; ++v)
        for (int w : sub[v]) rev[w].push_back(v);
    std::vector<int> comp_of(n, -1);
    int num_comp = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp_of[*it] >= 0) continue;
        std::deque<int> stack{*it};
        comp_of[*it] = num_comp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : rev[v])
                if (comp_of[w] < 0 && reach[w]) {
                    comp_of[w] = num_comp;
                    stack.push_back(w);
                }
        }
        ++num_comp;
    }
    std::vector<std::vector<int>> comps(num_comp);
    for (int v = 0; v < n; ++v)
        if (reach[v]) comps[comp_of[v]].push_back(v);

    std::optional<Rat> best;
    for (const auto& comp : comps) {
        auto m = karp_scc(comp, sub, weight, scale);
        if (m && (!best || *m < *best)) best = m;
    }
    return best;
}

namespace {

struct MinmaxSearch {
    const Game& g;
    std::vector<long long> weight;
    long long scale;
    long long leaves = 0;
    long long leaf_cap;
    std::unordered_map<int, int> box_choice;  // Box state -> chosen successor

    std::optional<Rat> best;

    MinmaxSearch(const Game& g_, const RewardFunction& rho, long long cap)
        : g(g_), scale(rho.scale), leaf_cap(cap) {
        weight.reserve(g.num_states());
        for (int s = 0; s < g.num_states(); ++s) weight.push_back(rho.values[s][0]);
    }

    // Reachable states under current partial choices; returns an undecided
    // reachable Box state, or -1 if the subgraph is fully determined.
    int explore(int from, std::vector<char>& reach) const {
        std::deque<int> todo{from};
        reach.assign(g.num_states(), 0);
        reach[from] = 1;
        int undecided = -1;
        while (!todo.empty()) {
            int v = todo.front();
            todo.pop_front();
            if (g.is_box(v)) {
                auto it = box_choice.find(v);
                if (it == box_choice.end()) {
                    if (undecided < 0) undecided = v;
                    continue;  // do not expand beyond an undecided choice
                }
                if (!reach[it->second]) {
                    reach[it->second] = 1;
                    todo.push_back(it->second);
                }
            } else {
                for (int w : g.successors(v))
                    if (!reach[w]) {
                        reach[w] = 1;
                        todo.push_back(w);
                    }
            }
        }
        return undecided;
    }

    void run(int from) {
        std::vector<char> reach;
        int undecided = explore(from, reach);
        if (undecided >= 0) {
            for (int t : g.successors(undecided)) {
                box_choice[undecided] = t;
                run(from);
            }
            box_choice.erase(undecided);
            return;
        }
        if (++leaves > leaf_cap)
            fail(ErrorKind::TooLarge, "positional strategy enumeration cap exceeded");
        std::vector<std::vector<int>> sub(g.num_states());
        for (int v = 0; v < g.num_states(); ++v) {
            if (!reach[v]) continue;
            if (g.is_box(v))
                sub[v].push_back(box_choice.at(v));
            else
                sub[v] = g.successors(v);
        }
        auto val = min_reachable_cycle_mean(sub, weight, scale, from);
        if (val && (!best || *val > *best)) best = *val;
    }
};

}  // namespace

Rat positional_minmax_value(const Game& g, const RewardFunction& rho, int s,
                            const OracleCaps& caps) {
    if (rho.dim != 1) fail(ErrorKind::BadReward, "mean-payoff oracle requires dim 1");
    MinmaxSearch search(g, rho, caps.max_strategy_leaves);
    search.run(s);
    if (!search.best) fail(ErrorKind::BadInput, "no cycle reachable in a total game");
    return *search.best;
}

ValueTable mp_oracle(const Game& g, const RewardFunction& rho, const OracleCaps& caps) {
    ValueTable t;
    for (int s = 0; s < g.num_states(); ++s)
        t.value.push_back(positional_minmax_value(g, rho, s, caps));
    return t;
}

namespace {

// Safety-restricted history game with rewards lifted by first projection.
struct SafeProduct {
    Game game;
    RewardFunction reward;
    int init = -1;
};

std::optional<SafeProduct> safe_product(const Game& g, const std::vector<WindowObjective>& objs,
                                        const RewardFunction& rho, int s, const OracleCaps& caps) {
    HistoryGame h = history_safety_game(g, objs, caps);
    if (!h.box_safe[h.init_node[s]]) return std::nullopt;
    int n = static_cast<int>(h.state_of.size());
    std::vector<int> remap(n, -1);
    int m = 0;
    for (int v = 0; v < n; ++v)
        if (h.box_safe[v]) remap[v] = m++;
    std::vector<Owner> owners(m);
    std::vector<std::pair<int, int>> edges;
    RewardFunction lifted;
    lifted.name = rho.name;
    lifted.dim = 1;
    lifted.scale = rho.scale;
    lifted.values.resize(m);
    for (int v = 0; v < n; ++v) {
        if (remap[v] < 0) continue;
        owners[remap[v]] = g.owner(h.state_of[v]);
        lifted.values[remap[v]] = rho.values[h.state_of[v]];
        for (int w : h.succ[v])
            if (remap[w] >= 0) edges.emplace_back(remap[v], remap[w]);
    }
    SafeProduct sp;
    sp.game = Game(std::move(owners), std::move(edges));
    sp.reward = std::move(lifted);
    sp.init = remap[h.init_node[s]];
    validate_game(sp.game);  // Box keeps a safe move, Diamond cannot leave
    return sp;
}

}  // namespace

bool combined_oracle(const Game& g, const std::vector<WindowObjective>& objs,
                     const RewardFunction& rho, const Rat& b, int s, const OracleCaps& caps) {
    auto sp = safe_product(g, objs, rho, s, caps);
    if (!sp) return false;
    return positional_minmax_value(sp->game, sp->reward, sp->init, caps) >= b;
}

std::optional<Rat> combined_value_oracle(const Game& g, const std::vector<WindowObjective>& objs,
                                         const RewardFunction& rho, int s, const OracleCaps& caps) {
    auto sp = safe_product(g, objs, rho, s, caps);
    if (!sp) return std::nullopt;
    return positional_minmax_value(sp->game, sp->reward, sp->init, caps);
}

bool balanced_sat_oracle(const Cnf& f, const OracleCaps& caps) {
    int n = f.num_vars;
    if (n % 2 != 0) fail(ErrorKind::BadFormula, "balanced SAT needs an even variable count");
    if (n > caps.max_balanced_vars) fail(ErrorKind::TooLarge, "balanced SAT variable cap exceeded");
    for (const Clause& c : f.clauses) {
        std::vector<int> vars;
        for (int lit : c) vars.push_back(std::abs(lit));
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        if (vars.size() > 3) fail(ErrorKind::BadFormula, "clause with more than 3 variables");
    }
    std::vector<bool> assignment(n, false);
    // Enumerate exactly-n/2 subsets via the standard combination walk.
    std::vector<int> pick(n / 2);
    for (int i = 0; i < n / 2; ++i) pick[i] = i;
    while (true) {
        std::fill(assignment.begin(), assignment.end(), false);
        for (int i : pick) assignment[i] = true;
        if (f.eval(assignment)) return true;
        int i = n / 2 - 1;
        while (i >= 0 && pick[i] == n - (n / 2 - i)) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < n / 2; ++j) pick[j] = pick[j - 1] + 1;
    }
}

bool balanced_qbf_oracle(const Qbf& f, const OracleCaps& caps) {
    int n = f.num_vars();
    if (n % 2 != 0) fail(ErrorKind::BadFormula, "balanced QBF needs an even variable count");
    if (n > caps.max_qbf_vars) fail(ErrorKind::TooLarge, "balanced QBF variable cap exceeded");
    std::vector<bool> assignment(n, false);
    std::function<bool(int, int)> rec = [&](int i, int ones) -> bool {
        if (ones > n / 2 || ones + (n - i) < n / 2) return false;  // balance unreachable
        if (i == n) return f.matrix.eval(assignment);
        auto branch = [&](bool v) {
            assignment[i] = v;
            return rec(i + 1, ones + (v ? 1 : 0));
        };
        if (f.quants[i] == Quant::Exists) return branch(false) || branch(true);
        return branch(false) && branch(true);
    };
    return rec(0, 0);
}

}  // namespace sg
