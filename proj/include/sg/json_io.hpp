#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sg/game.hpp"
#include "sg/objective.hpp"
#include "sg/scheme.hpp"

namespace sg {

using Json = nlohmann::ordered_json;

// Game file:
//   {"states":[{"id":0,"owner":"box","rewards":{"r":[1,"11/10"]}},...],
//    "edges":[[0,1],...]}
// Rationals are serialized as "num/den" strings; plain integers stay
// numbers. Reward functions are rebuilt with the least common scale.
struct GameBundle {
    Game game;
    std::map<std::string, RewardFunction> rewards;
};

GameBundle game_from_json(const Json& j);
Json game_to_json(const GameBundle& b);

// Objective file: one object or an array of
//   {"type":"window","W":2,"D":1,"reward":"r","mu":"1/2","nu":"3/4"}
//   {"type":"meanpayoff","reward":"r","b":"3/2"}
//   {"type":"variance","reward":"r","b":"3/2","c":"9/4"}
// mu/nu accept a single rational or an array matching the reward dimension.
using AnyObjective = std::variant<WindowObjective, MeanPayoffObjective, VarianceObjective>;

std::vector<AnyObjective> objectives_from_json(const Json& j, const GameBundle& bundle);
Json objective_to_json(const AnyObjective& o);

// Lasso file: {"prefix":[...],"cycle":[...]}.
Lasso lasso_from_json(const Json& j);
Json lasso_to_json(const Lasso& l);

// Strategy file: {"initial":s,"mem_count":M,"init_mem":m0,
//   "memory":[[state,mem,mem'],...],"choice":[[state,mem,succ],...]}.
FiniteStrategy strategy_from_json(const Json& j);
Json strategy_to_json(const FiniteStrategy& s);

// Debug export of a scheme's materialized transition table.
Json scheme_to_json(const StrategyScheme& s);

// Graphviz text: Box states as squares, Diamond as diamonds, rewards as
// labels.
std::string export_dot(const GameBundle& b);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sg
