#include "sg/scheme.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <unordered_set>

#include "sg/error.hpp"

namespace sg {

namespace {

std::uint64_t pair_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

std::uint64_t payload_hash(const std::vector<int>& v) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (int x : v) {
        h ^= static_cast<std::uint32_t>(x);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

int StrategyScheme::node_of(int state, int mem) const {
    auto it = node_index_.find(pair_key(state, mem));
    return it == node_index_.end() ? -1 : it->second;
}

int StrategyScheme::intern_mem(const std::vector<int>& payload) {
    std::uint64_t h = payload_hash(payload);
    auto [it, inserted] = mem_index_.try_emplace(h, static_cast<int>(mem_payload.size()));
    if (inserted) {
        mem_payload.push_back(payload);
        return it->second;
    }
    // Hash collisions are resolved by linear probing on a salted rehash.
    if (mem_payload[it->second] == payload) return it->second;
    std::uint64_t salt = h;
    while (true) {
        salt = salt * 6364136223846793005ull + 1442695040888963407ull;
        auto [it2, ins2] = mem_index_.try_emplace(salt, static_cast<int>(mem_payload.size()));
        if (ins2) {
            mem_payload.push_back(payload);
            return it2->second;
        }
        if (mem_payload[it2->second] == payload) return it2->second;
    }
}

void StrategyScheme::add_node(int state, int mem) {
    node_index_.emplace(pair_key(state, mem), static_cast<int>(nodes.size()));
    nodes.push_back({state, mem});
}

std::optional<int> StrategyScheme::init_node(int s) const {
    int n = node_of(s, init_mem);
    if (n < 0 || !alive[n]) return std::nullopt;
    return n;
}

std::vector<int> StrategyScheme::winning_states() const {
    std::vector<int> out;
    for (int s = 0; s < game->num_states(); ++s)
        if (init_ok[s]) out.push_back(s);
    return out;
}

std::vector<int> StrategyScheme::const_states(int node) const {
    std::vector<int> out;
    for (int j : box_csucc[node])
        if (alive[j]) out.push_back(nodes[j].state);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int StrategyScheme::up(int state, int mem) const {
    int n = node_of(state, mem);
    if (n < 0) fail(ErrorKind::BadInput, "memory update queried on an unmaterialized pair");
    return up_mem[n];
}

void StrategyScheme::finalize_box_admissible() {
    box_admissible.assign(nodes.size(), 0);
    for (int i = 0; i < num_nodes(); ++i)
        if (game->is_box(nodes[i].state) && !const_states(i).empty()) box_admissible[i] = 1;
}

// Greatest fixed point of the pruning operator: a pair survives iff its
// static condition holds and (Diamond) all successors survive /
// (Box) some constrained successor survives. Worklist with alive-successor
// counters on the Box side; each node dies at most once.
void prune_greatest_fixpoint(StrategyScheme& sch, const std::vector<char>& static_ok) {
    int n = sch.num_nodes();
    sch.alive.assign(static_ok.begin(), static_ok.end());

    // count[i] starts at the total candidate-successor count of a Box node;
    // every node that dies is processed exactly once and decrements each
    // Box predecessor once, so count[i] always equals the number of
    // successors not yet known dead.
    std::vector<std::vector<int>> rev(n);
    std::vector<int> count(n, 0);
    for (int i = 0; i < n; ++i) {
        const bool box = sch.game->is_box(sch.nodes[i].state);
        const auto& fsucc = box ? sch.box_csucc[i] : sch.succ[i];
        for (int j : fsucc) rev[j].push_back(i);
        if (box) count[i] = static_cast<int>(fsucc.size());
    }

    std::deque<int> dead;
    for (int i = 0; i < n; ++i) {
        if (!sch.alive[i])
            dead.push_back(i);
        else if (sch.game->is_box(sch.nodes[i].state) && count[i] == 0) {
            sch.alive[i] = 0;
            dead.push_back(i);
        }
    }
    while (!dead.empty()) {
        int j = dead.front();
        dead.pop_front();
        for (int i : rev[j]) {
            if (!sch.alive[i]) continue;
            if (sch.game->is_box(sch.nodes[i].state)) {
                if (--count[i] == 0) {
                    sch.alive[i] = 0;
                    dead.push_back(i);
                }
            } else {
                sch.alive[i] = 0;
                dead.push_back(i);
            }
        }
    }
}

std::vector<int> reach_init(const StrategyScheme& scheme) {
    std::vector<char> seen(scheme.num_nodes(), 0);
    std::deque<int> todo;
    for (int s = 0; s < scheme.game->num_states(); ++s) {
        if (!scheme.init_defined(s)) continue;
        int n = scheme.node_of(s, scheme.init_mem);
        if (n >= 0 && !seen[n]) {
            seen[n] = 1;
            todo.push_back(n);
        }
    }
    std::vector<int> out;
    while (!todo.empty()) {
        int i = todo.front();
        todo.pop_front();
        out.push_back(i);
        const bool box = scheme.game->is_box(scheme.nodes[i].state);
        if (box) {
            bool any = false;
            for (int j : scheme.box_csucc[i]) {
                if (!scheme.alive[j]) continue;
                any = true;
                if (!seen[j]) {
                    seen[j] = 1;
                    todo.push_back(j);
                }
            }
            if (!any)
                fail(ErrorKind::SchemeInvalid,
                     "reachable Box pair (" + std::to_string(scheme.nodes[i].state) + ", m" +
                         std::to_string(scheme.nodes[i].mem) + ") has an empty constrainer");
        } else {
            for (int j : scheme.succ[i])
                if (!seen[j]) {
                    seen[j] = 1;
                    todo.push_back(j);
                }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

StrategyScheme product_scheme(const std::vector<const StrategyScheme*>& components) {
    if (components.empty()) fail(ErrorKind::BadInput, "product of zero schemes");
    const Game* g = components[0]->game;
    for (const auto* c : components)
        if (c->game != g) fail(ErrorKind::BadInput, "product components over different games");
    const int n_comp = static_cast<int>(components.size());

    StrategyScheme out;
    out.game = g;

    std::vector<int> m0(n_comp);
    for (int i = 0; i < n_comp; ++i) m0[i] = components[i]->init_mem;
    out.init_mem = out.intern_mem(m0);

    for (int s = 0; s < g->num_states(); ++s)
        if (out.node_of(s, out.init_mem) < 0) out.add_node(s, out.init_mem);

    // Forward closure under the unconstrained component-wise update.
    for (int i = 0; i < static_cast<int>(out.nodes.size()); ++i) {
        const auto [s, m] = out.nodes[i];
        const auto& payload = out.mem_payload[m];
        std::vector<int> next(n_comp);
        for (int c = 0; c < n_comp; ++c) {
            int cn = components[c]->node_of(s, payload[c]);
            if (cn < 0)
                fail(ErrorKind::BadInput, "component scheme misses a pair required by the product");
            next[c] = components[c]->up_mem[cn];
        }
        int m2 = out.intern_mem(next);
        out.up_mem.push_back(m2);
        std::vector<int> kids;
        for (int t : g->successors(s)) {
            int k = out.node_of(t, m2);
            if (k < 0) {
                k = static_cast<int>(out.nodes.size());
                out.add_node(t, m2);
            }
            kids.push_back(k);
        }
        out.succ.push_back(std::move(kids));
    }

    // Box candidates: successors admitted by every component constrainer.
    out.box_csucc.assign(out.nodes.size(), {});
    for (int i = 0; i < out.num_nodes(); ++i) {
        const auto [s, m] = out.nodes[i];
        if (!g->is_box(s)) continue;
        const auto& payload = out.mem_payload[m];
        std::vector<int> kids;
        for (std::size_t e = 0; e < g->successors(s).size(); ++e) {
            int t = g->successors(s)[e];
            bool admitted = true;
            for (int c = 0; c < n_comp && admitted; ++c) {
                const StrategyScheme* comp = components[c];
                int cn = comp->node_of(s, payload[c]);
                int target = comp->node_of(t, comp->up_mem[cn]);
                admitted = target >= 0 && comp->alive[target];
            }
            if (admitted) kids.push_back(out.succ[i][e]);
        }
        out.box_csucc[i] = std::move(kids);
    }

    std::vector<char> static_ok(out.nodes.size(), 1);
    prune_greatest_fixpoint(out, static_ok);

    out.init_ok.assign(g->num_states(), 0);
    for (int s = 0; s < g->num_states(); ++s) {
        int node = out.node_of(s, out.init_mem);
        bool ok = node >= 0 && out.alive[node];
        for (int c = 0; c < n_comp && ok; ++c) ok = components[c]->init_defined(s);
        out.init_ok[s] = ok;
    }
    out.finalize_box_admissible();
    return out;
}

ProductGame product_game(const StrategyScheme& scheme) {
    const Game& g = *scheme.game;
    std::vector<Owner> owners(scheme.num_nodes());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < scheme.num_nodes(); ++i) {
        owners[i] = g.owner(scheme.nodes[i].state);
        if (owners[i] == Owner::Diamond) {
            for (int j : scheme.succ[i]) edges.emplace_back(i, j);
        } else {
            bool any = false;
            for (int j : scheme.box_csucc[i])
                if (scheme.alive[j]) {
                    edges.emplace_back(i, j);
                    any = true;
                }
            if (!any) edges.emplace_back(i, i);  // empty constrainer: self-loop
        }
    }
    ProductGame pg;
    pg.game = Game(std::move(owners), std::move(edges));
    pg.scheme = &scheme;
    pg.pair_of_state = scheme.nodes;
    return pg;
}

RewardFunction lift_reward(const ProductGame& pg, const RewardFunction& rho) {
    RewardFunction out;
    out.name = rho.name;
    out.dim = rho.dim;
    out.scale = rho.scale;
    out.values.reserve(pg.pair_of_state.size());
    for (const auto& node : pg.pair_of_state) out.values.push_back(rho.values[node.state]);
    return out;
}

int FiniteStrategy::update_at(int mem, int state) const {
    auto it = update.find(key(mem, state));
    return it == update.end() ? -1 : it->second;
}

int FiniteStrategy::choice_at(int mem, int state) const {
    auto it = choice.find(key(mem, state));
    return it == choice.end() ? -1 : it->second;
}

FiniteStrategy induce_strategy(const ProductGame& pg, const std::vector<int>& tau, int s) {
    const StrategyScheme& sch = *pg.scheme;
    if (!sch.init_defined(s))
        fail(ErrorKind::NotWinning, "state " + std::to_string(s) + " has no initial memory");
    FiniteStrategy sigma;
    sigma.initial_state = s;
    sigma.num_memories = static_cast<int>(sch.mem_payload.size());
    sigma.init_mem = sch.init_mem;

    int p0 = sch.node_of(s, sch.init_mem);
    std::vector<char> seen(pg.game.num_states(), 0);
    std::deque<int> todo{p0};
    seen[p0] = 1;
    while (!todo.empty()) {
        int p = todo.front();
        todo.pop_front();
        auto [v, m] = pg.pair_of_state[p];
        sigma.update.emplace(FiniteStrategy::key(m, v), sch.up_mem[p]);
        if (pg.game.is_box(p)) {
            int q = tau[p];
            if (q < 0 || !pg.game.has_edge(p, q))
                fail(ErrorKind::BadInput, "positional strategy leaves the product game");
            sigma.choice.emplace(FiniteStrategy::key(m, v), pg.pair_of_state[q].state);
            if (!seen[q]) {
                seen[q] = 1;
                todo.push_back(q);
            }
        } else {
            for (int q : pg.game.successors(p))
                if (!seen[q]) {
                    seen[q] = 1;
                    todo.push_back(q);
                }
        }
    }
    return sigma;
}

namespace {
struct TripleHash {
    std::size_t operator()(const std::array<int, 3>& a) const {
        std::uint64_t h = 1469598103934665603ull;
        for (int x : a) {
            h ^= static_cast<std::uint32_t>(x);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};
}  // namespace

bool admits(const StrategyScheme& scheme, int s, const FiniteStrategy& sigma) {
    if (!scheme.init_defined(s)) return false;
    const Game& g = *scheme.game;
    std::unordered_set<std::array<int, 3>, TripleHash> seen;
    std::deque<std::array<int, 3>> todo;
    todo.push_back({s, sigma.init_mem, scheme.init_mem});
    seen.insert(todo.front());
    while (!todo.empty()) {
        auto [v, sm, gm] = todo.front();
        todo.pop_front();
        int gnode = scheme.node_of(v, gm);
        if (gnode < 0) fail(ErrorKind::BadInput, "scheme misses a pair reached by the play");
        int gm2 = scheme.up_mem[gnode];
        auto push = [&](int t, int sm2) {
            std::array<int, 3> next{t, sm2, gm2};
            if (seen.insert(next).second) todo.push_back(next);
        };
        if (g.is_box(v)) {
            int t = sigma.choice_at(sm, v);
            if (t < 0) fail(ErrorKind::BadInput, "strategy undefined on one of its own plays");
            auto cs = scheme.const_states(gnode);
            if (!std::binary_search(cs.begin(), cs.end(), t)) return false;
            int sm2 = sigma.update_at(sm, v);
            if (sm2 < 0) fail(ErrorKind::BadInput, "strategy memory undefined on one of its own plays");
            push(t, sm2);
        } else {
            int sm2 = sigma.update_at(sm, v);
            if (sm2 < 0) sm2 = sm;  // adversary state never visited by sigma's own table
            for (int t : g.successors(v)) push(t, sm2);
        }
    }
    return true;
}

bool admits(const StrategyScheme& scheme, const std::vector<int>& path) {
    if (path.empty()) fail(ErrorKind::BadInput, "empty path");
    if (!scheme.init_defined(path[0])) return false;
    int gm = scheme.init_mem;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        int gnode = scheme.node_of(path[i], gm);
        if (gnode < 0) fail(ErrorKind::BadInput, "scheme misses a pair reached by the path");
        if (scheme.game->is_box(path[i])) {
            auto cs = scheme.const_states(gnode);
            if (!std::binary_search(cs.begin(), cs.end(), path[i + 1])) return false;
        }
        gm = scheme.up_mem[gnode];
    }
    return true;
}

Lasso simulate(const Game& g, const FiniteStrategy& sigma, const std::vector<int>& adversary,
               long long max_steps) {
    std::unordered_map<std::uint64_t, int> first_seen;
    std::vector<int> seq;
    int v = sigma.initial_state, m = sigma.init_mem;
    for (long long step = 0; step < max_steps; ++step) {
        std::uint64_t k = FiniteStrategy::key(m, v);
        auto [it, inserted] = first_seen.try_emplace(k, static_cast<int>(seq.size()));
        if (!inserted) {
            Lasso l;
            l.prefix.assign(seq.begin(), seq.begin() + it->second);
            l.cycle.assign(seq.begin() + it->second, seq.end());
            return l;
        }
        seq.push_back(v);
        int next;
        if (g.is_box(v)) {
            next = sigma.choice_at(m, v);
            if (next < 0) fail(ErrorKind::BadInput, "strategy undefined at a reached Box state");
        } else {
            next = adversary[v];
        }
        int m2 = sigma.update_at(m, v);
        if (m2 < 0) m2 = m;
        v = next;
        m = m2;
    }
    fail(ErrorKind::TooLarge, "simulation did not close a lasso within the step budget");
}

}  // namespace sg
