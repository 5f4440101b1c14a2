#include "sg/json_io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "sg/error.hpp"

namespace sg {

namespace {

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return rat(j.get<long long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
    fail(ErrorKind::BadInput, "expected an integer or a \"num/den\" string");
}

Json rat_to_json(const Rat& r) {
    if (r.denominator() == 1 && r.numerator() >= std::numeric_limits<long long>::min() &&
        r.numerator() <= std::numeric_limits<long long>::max())
        return Json(to_ll(r.numerator()));
    return Json(to_string(r));
}

std::vector<Rat> rat_vector_from_json(const Json& j, int dim) {
    std::vector<Rat> out;
    if (j.is_array()) {
        for (const auto& x : j) out.push_back(rat_from_json(x));
    } else {
        out.push_back(rat_from_json(j));
    }
    if (static_cast<int>(out.size()) != dim)
        fail(ErrorKind::BadInput, "bound dimension mismatch");
    return out;
}

}  // namespace

GameBundle game_from_json(const Json& j) {
    if (!j.contains("states") || !j.contains("edges"))
        fail(ErrorKind::BadInput, "game file needs \"states\" and \"edges\"");
    int n = static_cast<int>(j["states"].size());
    std::vector<Owner> owners(n, Owner::Box);
    std::map<std::string, std::vector<std::vector<Rat>>> raw;
    for (const auto& st : j["states"]) {
        int id = st.at("id").get<int>();
        if (id < 0 || id >= n) fail(ErrorKind::BadInput, "state ids must be dense 0..n-1");
        std::string owner = st.value("owner", "box");
        if (owner == "box")
            owners[id] = Owner::Box;
        else if (owner == "diamond")
            owners[id] = Owner::Diamond;
        else
            fail(ErrorKind::BadInput, "unknown owner '" + owner + "'");
        if (st.contains("rewards"))
            for (auto it = st["rewards"].begin(); it != st["rewards"].end(); ++it) {
                auto& rows = raw[it.key()];
                rows.resize(n);
                std::vector<Rat> v;
                if (it.value().is_array())
                    for (const auto& x : it.value()) v.push_back(rat_from_json(x));
                else
                    v.push_back(rat_from_json(it.value()));
                rows[id] = std::move(v);
            }
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) fail(ErrorKind::BadInput, "edges must be [from,to]");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }

    GameBundle b;
    b.game = Game(std::move(owners), std::move(edges));
    validate_game(b.game);

    for (auto& [name, rows] : raw) {
        RewardFunction r;
        r.name = name;
        r.dim = -1;
        Int scale = 1;
        for (int s = 0; s < n; ++s) {
            if (rows[s].empty())
                fail(ErrorKind::BadInput, "reward '" + name + "' missing at state " +
                                              std::to_string(s));
            if (r.dim == -1) r.dim = static_cast<int>(rows[s].size());
            if (static_cast<int>(rows[s].size()) != r.dim)
                fail(ErrorKind::BadInput, "reward '" + name + "' has mixed dimensions");
            for (const Rat& x : rows[s]) scale = boost::multiprecision::lcm(scale, x.denominator());
        }
        r.scale = to_ll(scale);
        for (int s = 0; s < n; ++s) {
            std::vector<long long> row;
            for (const Rat& x : rows[s])
                row.push_back(to_ll(x.numerator() * (scale / x.denominator())));
            r.values.push_back(std::move(row));
        }
        b.rewards.emplace(name, std::move(r));
    }
    return b;
}

Json game_to_json(const GameBundle& b) {
    Json states = Json::array();
    for (int s = 0; s < b.game.num_states(); ++s) {
        Json st;
        st["id"] = s;
        st["owner"] = b.game.is_box(s) ? "box" : "diamond";
        Json rewards = Json::object();
        for (const auto& [name, r] : b.rewards) {
            Json v = Json::array();
            for (int d = 0; d < r.dim; ++d) v.push_back(rat_to_json(r.semantic(s, d)));
            rewards[name] = v;
        }
        st["rewards"] = rewards;
        states.push_back(st);
    }
    Json edges = Json::array();
    for (auto [a, t] : b.game.edges()) edges.push_back(Json::array({a, t}));
    Json j;
    j["states"] = states;
    j["edges"] = edges;
    return j;
}

namespace {

const RewardFunction& resolve_reward(const GameBundle& b, const Json& j) {
    std::string name = j.value("reward", "");
    auto it = b.rewards.find(name);
    if (it == b.rewards.end())
        fail(ErrorKind::BadInput, "objective references unknown reward '" + name + "'");
    return it->second;
}

AnyObjective objective_from_json(const Json& j, const GameBundle& bundle) {
    std::string type = j.value("type", "");
    if (type == "window") {
        WindowObjective phi;
        phi.W = j.at("W").get<int>();
        phi.D = j.at("D").get<int>();
        phi.rho = resolve_reward(bundle, j);
        phi.mu = rat_vector_from_json(j.at("mu"), phi.rho.dim);
        phi.nu = rat_vector_from_json(j.at("nu"), phi.rho.dim);
        validate_objective(bundle.game, phi);
        return phi;
    }
    if (type == "meanpayoff") {
        MeanPayoffObjective psi;
        psi.rho = resolve_reward(bundle, j);
        psi.b = rat_from_json(j.at("b"));
        return psi;
    }
    if (type == "variance") {
        VarianceObjective v;
        v.rho = resolve_reward(bundle, j);
        v.b = rat_from_json(j.at("b"));
        v.c = rat_from_json(j.at("c"));
        return v;
    }
    fail(ErrorKind::BadInput, "unknown objective type '" + type + "'");
}

}  // namespace

std::vector<AnyObjective> objectives_from_json(const Json& j, const GameBundle& bundle) {
    std::vector<AnyObjective> out;
    if (j.is_array())
        for (const auto& o : j) out.push_back(objective_from_json(o, bundle));
    else
        out.push_back(objective_from_json(j, bundle));
    return out;
}

Json objective_to_json(const AnyObjective& o) {
    Json j;
    if (const auto* w = std::get_if<WindowObjective>(&o)) {
        j["type"] = "window";
        j["W"] = w->W;
        j["D"] = w->D;
        j["reward"] = w->rho.name;
        if (w->rho.dim == 1) {
            j["mu"] = rat_to_json(w->mu[0]);
            j["nu"] = rat_to_json(w->nu[0]);
        } else {
            Json mu = Json::array(), nu = Json::array();
            for (const auto& x : w->mu) mu.push_back(rat_to_json(x));
            for (const auto& x : w->nu) nu.push_back(rat_to_json(x));
            j["mu"] = mu;
            j["nu"] = nu;
        }
    } else if (const auto* p = std::get_if<MeanPayoffObjective>(&o)) {
        j["type"] = "meanpayoff";
        j["reward"] = p->rho.name;
        j["b"] = rat_to_json(p->b);
    } else {
        const auto& v = std::get<VarianceObjective>(o);
        j["type"] = "variance";
        j["reward"] = v.rho.name;
        j["b"] = rat_to_json(v.b);
        j["c"] = rat_to_json(v.c);
    }
    return j;
}

Lasso lasso_from_json(const Json& j) {
    Lasso l;
    for (const auto& x : j.at("prefix")) l.prefix.push_back(x.get<int>());
    for (const auto& x : j.at("cycle")) l.cycle.push_back(x.get<int>());
    return l;
}

Json lasso_to_json(const Lasso& l) {
    Json j;
    j["prefix"] = l.prefix;
    j["cycle"] = l.cycle;
    return j;
}

FiniteStrategy strategy_from_json(const Json& j) {
    FiniteStrategy s;
    s.initial_state = j.at("initial").get<int>();
    s.num_memories = j.at("mem_count").get<int>();
    s.init_mem = j.at("init_mem").get<int>();
    for (const auto& row : j.at("memory"))
        s.update.emplace(FiniteStrategy::key(row[1].get<int>(), row[0].get<int>()),
                         row[2].get<int>());
    for (const auto& row : j.at("choice"))
        s.choice.emplace(FiniteStrategy::key(row[1].get<int>(), row[0].get<int>()),
                         row[2].get<int>());
    return s;
}

Json strategy_to_json(const FiniteStrategy& s) {
    Json j;
    j["initial"] = s.initial_state;
    j["mem_count"] = s.num_memories;
    j["init_mem"] = s.init_mem;
    std::vector<std::array<int, 3>> memory, choice;
    for (const auto& [k, v] : s.update)
        memory.push_back({static_cast<int>(k & 0xffffffffu), static_cast<int>(k >> 32), v});
    for (const auto& [k, v] : s.choice)
        choice.push_back({static_cast<int>(k & 0xffffffffu), static_cast<int>(k >> 32), v});
    std::sort(memory.begin(), memory.end());
    std::sort(choice.begin(), choice.end());
    j["memory"] = memory;
    j["choice"] = choice;
    return j;
}

Json scheme_to_json(const StrategyScheme& s) {
    Json j;
    j["mem_count"] = s.mem_payload.size();
    j["init_mem"] = s.init_mem;
    Json nodes = Json::array();
    for (int i = 0; i < s.num_nodes(); ++i) {
        Json node;
        node["state"] = s.nodes[i].state;
        node["mem"] = s.nodes[i].mem;
        node["up"] = s.up_mem[i];
        node["alive"] = static_cast<bool>(s.alive[i]);
        if (s.game->is_box(s.nodes[i].state)) node["const"] = s.const_states(i);
        nodes.push_back(node);
    }
    j["nodes"] = nodes;
    j["init"] = s.winning_states();
    return j;
}

std::string export_dot(const GameBundle& b) {
    std::ostringstream out;
    out << "digraph game {\n";
    for (int s = 0; s < b.game.num_states(); ++s) {
        out << "  s" << s << " [shape=" << (b.game.is_box(s) ? "square" : "diamond")
            << ", label=\"" << s;
        for (const auto& [name, r] : b.rewards) {
            out << "\\n" << name << "=";
            for (int d = 0; d < r.dim; ++d) out << (d ? "," : "") << to_string(r.semantic(s, d));
        }
        out << "\"];\n";
    }
    for (auto [a, t] : b.game.edges()) out << "  s" << a << " -> s" << t << ";\n";
    out << "}\n";
    return out.str();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::BadInput, "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorKind::BadInput, "cannot parse '" + path + "': " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::BadInput, "cannot open '" + path + "' for writing");
    out << text;
}

}  // namespace sg
