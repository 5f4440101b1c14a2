#include "sg/game.hpp"

#include <algorithm>
#include <functional>

#include "sg/error.hpp"

namespace sg {

Game::Game(std::vector<Owner> owners, std::vector<std::pair<int, int>> edge_list)
    : owners_(std::move(owners)), edges_(std::move(edge_list)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    int n = num_states();
    succ_.assign(n, {});
    pred_.assign(n, {});
    for (auto [s, t] : edges_) {
        if (s < 0 || s >= n || t < 0 || t >= n)
            fail(ErrorKind::BadEdge, "edge (" + std::to_string(s) + "," + std::to_string(t) +
                                         ") references an unknown state");
        succ_[s].push_back(t);
        pred_[t].push_back(s);
    }
}

bool Game::is_graph() const {
    for (Owner o : owners_)
        if (o == Owner::Diamond) return false;
    return true;
}

bool Game::has_edge(int s, int t) const {
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(s, t));
}

int Game::edge_index(int s, int t) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(s, t));
    if (it == edges_.end() || *it != std::make_pair(s, t)) return -1;
    return static_cast<int>(it - edges_.begin());
}

void validate_game(const Game& g) {
    for (int s = 0; s < g.num_states(); ++s)
        if (g.successors(s).empty())
            fail(ErrorKind::DanglingState, "state " + std::to_string(s) + " has no outgoing edge");
}

long long RewardFunction::max_stored() const {
    long long m = 0;
    for (const auto& v : values)
        for (long long x : v) m = std::max(m, x);
    return m;
}

long long RewardFunction::min_stored() const {
    long long m = 0;
    for (const auto& v : values)
        for (long long x : v) m = std::min(m, x);
    return m;
}

void validate_reward(const Game& g, const RewardFunction& r) {
    if (r.dim < 1) fail(ErrorKind::BadReward, "reward dimension must be positive");
    if (r.scale < 1) fail(ErrorKind::BadReward, "reward scale must be positive");
    if (static_cast<int>(r.values.size()) != g.num_states())
        fail(ErrorKind::BadReward, "reward '" + r.name + "' does not cover every state");
    for (const auto& v : r.values)
        if (static_cast<int>(v.size()) != r.dim)
            fail(ErrorKind::BadReward, "reward '" + r.name + "' has inconsistent dimension");
}

int Lasso::at(long long i) const {
    long long p = static_cast<long long>(prefix.size());
    if (i < p) return prefix[static_cast<std::size_t>(i)];
    return cycle[static_cast<std::size_t>((i - p) % static_cast<long long>(cycle.size()))];
}

void validate_lasso(const Game& g, const Lasso& l) {
    if (l.cycle.empty()) fail(ErrorKind::BadLasso, "lasso cycle is empty");
    auto check = [&](int a, int b) {
        if (a < 0 || a >= g.num_states() || b < 0 || b >= g.num_states() || !g.has_edge(a, b))
            fail(ErrorKind::BadLasso,
                 "(" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge");
    };
    for (std::size_t i = 0; i + 1 < l.prefix.size(); ++i) check(l.prefix[i], l.prefix[i + 1]);
    if (!l.prefix.empty()) check(l.prefix.back(), l.cycle.front());
    for (std::size_t i = 0; i + 1 < l.cycle.size(); ++i) check(l.cycle[i], l.cycle[i + 1]);
    check(l.cycle.back(), l.cycle.front());
}

// Johnson-style enumeration; fine for the instance sizes this library targets.
std::vector<std::vector<int>> simple_cycles(const Game& g, std::size_t cap) {
    std::vector<std::vector<int>> out;
    int n = g.num_states();
    std::vector<char> on_path(n, 0);
    std::vector<int> path;
    // Cycles are reported with their minimal state first; the DFS only
    // visits states >= root, which makes each cycle appear exactly once.
    std::function<void(int, int)> dfs = [&](int root, int v) {
        on_path[v] = 1;
        path.push_back(v);
        for (int t : g.successors(v)) {
            if (t == root) {
                if (out.size() >= cap) fail(ErrorKind::TooLarge, "too many simple cycles");
                out.push_back(path);
            } else if (t > root && !on_path[t]) {
                dfs(root, t);
            }
        }
        path.pop_back();
        on_path[v] = 0;
    };
    for (int root = 0; root < n; ++root) dfs(root, root);
    return out;
}

std::vector<std::vector<int>> strongly_connected_components(const Game& g) {
    // Tarjan, iterative.
    int n = g.num_states();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int s0 = 0; s0 < n; ++s0) {
        if (index[s0] != -1) continue;
        std::vector<Frame> frames{{s0, 0}};
        index[s0] = low[s0] = next_index++;
        stack.push_back(s0);
        on_stack[s0] = 1;
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child < g.successors(v).size()) {
                int w = g.successors(v)[child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::vector<int> c;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        c.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(c.begin(), c.end());
                    comps.push_back(std::move(c));
                }
                int v_done = v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v_done]);
            }
        }
    }
    // Tarjan emits components in reverse topological order.
    std::reverse(comps.begin(), comps.end());
    return comps;
}

std::vector<int> reachable_states(const Game& g, int from) {
    std::vector<char> seen(g.num_states(), 0);
    std::vector<int> todo{from}, out;
    seen[from] = 1;
    while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        out.push_back(v);
        for (int t : g.successors(v))
            if (!seen[t]) {
                seen[t] = 1;
                todo.push_back(t);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sg
