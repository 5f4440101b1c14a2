#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sg/game.hpp"

namespace sg {

// Finite-memory strategy scheme (Mem, Up, Const, Init) over a game, stored
// as the materialized pair graph over (state, memory) pairs.
//
// Memory elements are interned opaque int-vector payloads; their meaning
// belongs to the construction that built the scheme (window scheme: step
// counters plus accumulated window sums; product scheme: component memory
// indices). Only pairs reachable from the candidate initial pairs
// {(s, m0) : s in S} under the *unconstrained* update dynamics are
// materialized; the greatest fixed point is computed on that space (forward
// closure makes the restriction exact). Up on unmaterialized pairs remains
// defined by the construction formula but is never needed.
class StrategyScheme {
  public:
    struct Node {
        int state;
        int mem;
    };

    const Game* game = nullptr;

    std::vector<std::vector<int>> mem_payload;  // interned memory elements
    int init_mem = -1;                          // shared initial element m0

    std::vector<Node> nodes;
    std::vector<int> up_mem;                // per node: memory after leaving (state, mem)
    std::vector<std::vector<int>> succ;     // per node: successors under all game edges
    std::vector<std::vector<int>> box_csucc;  // Box nodes: constrainer candidates before pruning
    std::vector<char> alive;                // per node: in the greatest fixed point
    std::vector<char> box_admissible;       // per node: Box pair with Const != empty
    std::vector<char> init_ok;              // per state: Init(s) defined

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int node_of(int state, int mem) const;
    int intern_mem(const std::vector<int>& payload);

    bool init_defined(int s) const { return init_ok[s]; }
    std::optional<int> init_node(int s) const;
    std::vector<int> winning_states() const;

    // Const(s, m) for a Box pair: successor states t with (t, Up(s,m)) in
    // the greatest fixed point. Defined for every materialized Box pair.
    std::vector<int> const_states(int node) const;

    // Up(s, m) by pair lookup; the pair must be materialized.
    int up(int state, int mem) const;

    void add_node(int state, int mem);  // builder use
    void finalize_box_admissible();

  private:
    std::unordered_map<std::uint64_t, int> node_index_;
    std::unordered_map<std::uint64_t, int> mem_index_;
};

// Computes the greatest fixed point over the materialized pair graph: a
// pair survives iff its static condition holds, Diamond pairs keep all
// successors, Box pairs keep at least one constrainer candidate. Fills
// scheme.alive. Used by the scheme constructions.
void prune_greatest_fixpoint(StrategyScheme& scheme, const std::vector<char>& static_ok);

// Least fixed point of the reachability rule: contains every initial pair
// and is closed under successors, with Box moves restricted to Const.
// Throws Error{SchemeInvalid} if a reachable Box pair has empty Const.
std::vector<int> reach_init(const StrategyScheme& scheme);

// Synchronized product: memory is the tuple of component memories, updates
// are component-wise, and the constrainer is the intersection of the
// component constrainers pruned by a greatest fixed point that removes
// pairs from which Box cannot keep every component admissible.
StrategyScheme product_scheme(const std::vector<const StrategyScheme*>& components);

// The game over materialized (state, memory) pairs: Diamond pairs move
// along all edges, Box pairs with non-empty Const move within Const, Box
// pairs with empty Const get a self-loop.
struct ProductGame {
    Game game;                              // states = scheme node ids
    const StrategyScheme* scheme = nullptr;
    std::vector<StrategyScheme::Node> pair_of_state;  // back-map
};

ProductGame product_game(const StrategyScheme& scheme);

// Reward on the product game by first projection.
RewardFunction lift_reward(const ProductGame& pg, const RewardFunction& rho);

// Finite-memory strategy for Box: a memory automaton (update on the state
// being left) plus a positional choice per (Box state, memory). Stored
// sparsely over the pairs reachable under the strategy's own plays.
struct FiniteStrategy {
    int initial_state = 0;
    int num_memories = 1;
    int init_mem = 0;
    std::unordered_map<std::uint64_t, int> update;  // (mem, state) -> mem'
    std::unordered_map<std::uint64_t, int> choice;  // (mem, Box state) -> successor state

    static std::uint64_t key(int mem, int state) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(mem)) << 32) |
               static_cast<std::uint32_t>(state);
    }
    int update_at(int mem, int state) const;
    int choice_at(int mem, int state) const;  // -1 if undefined
};

// The strategy induced by a positional product strategy tau (successor
// product-state per Box product-state) from s; determined up to
// play-equivalence from s. Throws Error{NotWinning} if Init(s) is undefined.
FiniteStrategy induce_strategy(const ProductGame& pg, const std::vector<int>& tau, int s);

// True iff Init(s) is defined and every sigma-consistent finite path from s
// stays inside Const at Box states (decided on the finite synchronous
// product of the strategy automaton with the scheme).
bool admits(const StrategyScheme& scheme, int s, const FiniteStrategy& sigma);

// Prefix variant of admission: walks the memory along the given path.
bool admits(const StrategyScheme& scheme, const std::vector<int>& path);

// Play of sigma against a positional adversary, folded into a lasso once a
// (state, memory) pair repeats.
Lasso simulate(const Game& g, const FiniteStrategy& sigma, const std::vector<int>& adversary,
               long long max_steps = 1000000);

}  // namespace sg
