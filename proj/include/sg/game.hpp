#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sg/rational.hpp"

namespace sg {

// Player Box is the controller (maximizer / safety player), Player Diamond
// the adversary. A graph is a game in which every state belongs to Box.
enum class Owner { Box, Diamond };

// Finite total game arena. State ids are dense 0..n-1, the edge relation is
// stored duplicate-free both as a sorted list and as adjacency vectors.
class Game {
  public:
    Game() = default;
    Game(std::vector<Owner> owners, std::vector<std::pair<int, int>> edge_list);

    int num_states() const { return static_cast<int>(owners_.size()); }
    Owner owner(int s) const { return owners_[s]; }
    bool is_box(int s) const { return owners_[s] == Owner::Box; }
    bool is_graph() const;  // no Diamond states

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& successors(int s) const { return succ_[s]; }
    const std::vector<int>& predecessors(int s) const { return pred_[s]; }
    bool has_edge(int s, int t) const;
    // Index of (s,t) in edges(), -1 if absent.
    int edge_index(int s, int t) const;

  private:
    std::vector<Owner> owners_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> pred_;
};

// Checks totality (every state has a successor) and edge sanity.
// Throws Error{DanglingState, BadEdge} on violation.
void validate_game(const Game& g);

// k-dimensional state rewards stored as integers over a common positive
// scale denominator; the semantic reward of s in dimension d is
// values[s][d] / scale.
struct RewardFunction {
    std::string name;
    int dim = 1;
    long long scale = 1;
    std::vector<std::vector<long long>> values;  // per state, length dim

    Rat semantic(int s, int d = 0) const { return rat(values[s][d], scale); }
    // Largest stored value, clamped below at 0 (rewards in the construction
    // regime are non-negative integers; negative entries only appear before
    // an affine shift).
    long long max_stored() const;
    long long min_stored() const;
    bool all_non_negative() const { return min_stored() >= 0; }
};

void validate_reward(const Game& g, const RewardFunction& r);

// Ultimately periodic run prefix . cycle^omega.
struct Lasso {
    std::vector<int> prefix;
    std::vector<int> cycle;  // non-empty

    int length() const { return static_cast<int>(prefix.size() + cycle.size()); }
    // State at run position i (i >= 0, unbounded).
    int at(long long i) const;
};

// Throws Error{BadLasso} unless every consecutive pair (including the
// prefix-to-cycle seam and the cycle wrap-around) is an edge of g.
void validate_lasso(const Game& g, const Lasso& l);

// All simple cycles of g, each as a state sequence (no repeated state;
// successive states and the wrap-around are edges). Throws Error{TooLarge}
// if more than cap cycles exist.
std::vector<std::vector<int>> simple_cycles(const Game& g, std::size_t cap = 200000);

// Strongly connected components in topological order; each component is a
// sorted state list.
std::vector<std::vector<int>> strongly_connected_components(const Game& g);

std::vector<int> reachable_states(const Game& g, int from);

}  // namespace sg
