#include "sg/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sg/corpus.hpp"
#include "sg/error.hpp"
#include "sg/hardgen.hpp"
#include "sg/json_io.hpp"
#include "sg/mpsolve.hpp"
#include "sg/oracle.hpp"
#include "sg/runcheck.hpp"
#include "sg/variance.hpp"
#include "sg/window.hpp"

namespace sg {

namespace {

struct LoadedObjectives {
    MultiObjective windows;  // may be empty
    std::vector<MeanPayoffObjective> mean_payoffs;
    std::vector<VarianceObjective> variances;
};

GameBundle load_bundle(const std::string& path) { return game_from_json(read_json_file(path)); }

LoadedObjectives load_objectives(const std::vector<std::string>& paths, const GameBundle& bundle) {
    LoadedObjectives out;
    for (const auto& p : paths)
        for (auto& o : objectives_from_json(read_json_file(p), bundle)) {
            if (auto* w = std::get_if<WindowObjective>(&o))
                out.windows.conjuncts.push_back(std::move(*w));
            else if (auto* mp = std::get_if<MeanPayoffObjective>(&o))
                out.mean_payoffs.push_back(std::move(*mp));
            else
                out.variances.push_back(std::move(std::get<VarianceObjective>(o)));
        }
    return out;
}

std::vector<int> query_states(const std::vector<int>& given, const Game& g) {
    if (!given.empty()) {
        for (int s : given)
            if (s < 0 || s >= g.num_states())
                fail(ErrorKind::BadInput, "queried state " + std::to_string(s) + " out of range");
        return given;
    }
    std::vector<int> all(g.num_states());
    for (int s = 0; s < g.num_states(); ++s) all[s] = s;
    return all;
}

// Any positional product strategy staying in the constrainer witnesses the
// window objectives alone.
std::vector<int> first_admitted_tau(const ProductGame& pg) {
    std::vector<int> tau(pg.game.num_states(), -1);
    for (int p = 0; p < pg.game.num_states(); ++p)
        if (pg.game.is_box(p)) tau[p] = pg.game.successors(p)[0];
    return tau;
}

int cmd_solve_window(const std::string& game_path, const std::vector<std::string>& obj_paths,
                     const std::vector<int>& states, bool json, const std::string& out_path,
                     const std::string& scheme_path, std::size_t pair_cap, std::ostream& out) {
    GameBundle bundle = load_bundle(game_path);
    LoadedObjectives objs = load_objectives(obj_paths, bundle);
    if (objs.windows.conjuncts.empty() || !objs.mean_payoffs.empty() || !objs.variances.empty())
        fail(ErrorKind::BadInput, "solve-window expects window objectives only");

    std::vector<StrategyScheme> parts;
    for (const auto& phi : objs.windows.conjuncts)
        parts.push_back(build_scheme(bundle.game, phi, pair_cap));
    const StrategyScheme* scheme = &parts[0];
    std::optional<StrategyScheme> product;
    if (parts.size() > 1) {
        std::vector<const StrategyScheme*> ptrs;
        for (const auto& p : parts) ptrs.push_back(&p);
        product = product_scheme(ptrs);
        scheme = &*product;
    }

    std::vector<int> queried = query_states(states, bundle.game);
    bool all_win = true;
    Json report;
    report["command"] = "solve-window";
    report["memory_bound"] = to_string(memory_bound(objs.windows));
    Json conj = Json::array();
    for (const auto& p : parts) conj.push_back(p.mem_payload.size());
    report["conjunct_memories"] = conj;
    report["product_memories"] = scheme->mem_payload.size();
    Json verdicts = Json::array();
    for (int s : queried) {
        bool win = scheme->init_defined(s);
        all_win = all_win && win;
        verdicts.push_back(Json{{"state", s}, {"achievable", win}});
    }
    report["verdicts"] = verdicts;

    if (!scheme_path.empty()) write_text_file(scheme_path, scheme_to_json(*scheme).dump(1));
    if (!out_path.empty()) {
        int s0 = -1;
        for (int s : queried)
            if (scheme->init_defined(s)) {
                s0 = s;
                break;
            }
        if (s0 < 0) fail(ErrorKind::BadInput, "no winning queried state to extract a strategy from");
        ProductGame pg = product_game(*scheme);
        FiniteStrategy sigma = induce_strategy(pg, first_admitted_tau(pg), s0);
        write_text_file(out_path, strategy_to_json(sigma).dump(1));
        report["strategy_file"] = out_path;
    }

    if (json) {
        out << report.dump(1) << "\n";
    } else {
        out << "memory bound " << report["memory_bound"].get<std::string>() << ", product holds "
            << scheme->mem_payload.size() << " memory elements\n";
        for (int s : queried)
            out << "state " << s << ": "
                << (scheme->init_defined(s) ? "achievable" : "not achievable") << "\n";
    }
    return all_win ? 0 : 1;
}

int cmd_solve_combined(const std::string& game_path, const std::vector<std::string>& obj_paths,
                       int state, bool json, const std::string& out_path, std::ostream& out) {
    GameBundle bundle = load_bundle(game_path);
    LoadedObjectives objs = load_objectives(obj_paths, bundle);
    if (objs.windows.conjuncts.empty() || objs.mean_payoffs.size() != 1 || !objs.variances.empty())
        fail(ErrorKind::BadInput,
             "solve-combined expects window objectives plus exactly one mean-payoff objective");
    CombinedResult res = solve_combined(bundle.game, objs.windows, objs.mean_payoffs[0], state);
    if (res.achievable && !out_path.empty())
        write_text_file(out_path, strategy_to_json(*res.strategy).dump(1));
    if (json) {
        Json j{{"command", "solve-combined"}, {"state", state}, {"achievable", res.achievable}};
        if (!out_path.empty() && res.achievable) j["strategy_file"] = out_path;
        out << j.dump(1) << "\n";
    } else {
        out << "state " << state << ": " << (res.achievable ? "achievable" : "not achievable")
            << "\n";
    }
    return res.achievable ? 0 : 1;
}

int cmd_max_bound(const std::string& game_path, const std::vector<std::string>& obj_paths,
                  const std::string& reward, int state, bool json, std::ostream& out) {
    GameBundle bundle = load_bundle(game_path);
    LoadedObjectives objs = load_objectives(obj_paths, bundle);
    if (objs.windows.conjuncts.empty())
        fail(ErrorKind::BadInput, "max-bound expects window objectives");
    auto it = bundle.rewards.find(reward);
    if (it == bundle.rewards.end())
        fail(ErrorKind::BadInput, "unknown reward '" + reward + "'");
    auto bound = max_bound(bundle.game, objs.windows, it->second, state);
    if (json) {
        Json j{{"command", "max-bound"}, {"state", state}};
        j["bound"] = bound ? Json(to_string(*bound)) : Json(nullptr);
        out << j.dump(1) << "\n";
    } else if (bound) {
        out << "maximal bound from state " << state << ": " << to_string(*bound) << "\n";
    } else {
        out << "window objectives unachievable from state " << state << "\n";
    }
    return bound ? 0 : 1;
}

// Phase targets converging to f inside its component: integer-multiplicity
// mixes of f with a full-support circulation of the component.
std::vector<FrequencyVector> trace_targets(const Game& sub, const FrequencyVector& f, int phases) {
    auto cycles = simple_cycles(sub, 100000);
    FrequencyVector base;
    base.f.assign(sub.edges().size(), Rat(0));
    for (const auto& cyc : cycles) {
        int len = static_cast<int>(cyc.size());
        for (int i = 0; i < len; ++i) {
            int e = sub.edge_index(cyc[i], cyc[(i + 1) % len]);
            base.f[e] += Rat(Int(1), Int(len) * static_cast<int>(cycles.size()));
        }
    }
    std::vector<FrequencyVector> targets;
    for (int i = 1; i <= phases; ++i) {
        Rat delta(1, 2 * i);
        FrequencyVector t;
        for (std::size_t e = 0; e < f.f.size(); ++e)
            t.f.push_back((Rat(1) - delta) * f.f[e] + delta * base.f[e]);
        targets.push_back(std::move(t));
    }
    return targets;
}

int cmd_variance_check(const std::string& game_path, const std::vector<std::string>& obj_paths,
                       int state, bool json, const std::string& trace_path, int phases,
                       std::ostream& out) {
    GameBundle bundle = load_bundle(game_path);
    if (!bundle.game.is_graph())
        fail(ErrorKind::BadInput, "variance-check handles graphs (no adversary states)");
    LoadedObjectives objs = load_objectives(obj_paths, bundle);
    if (objs.variances.size() != 1 || !objs.windows.conjuncts.empty() || !objs.mean_payoffs.empty())
        fail(ErrorKind::BadInput, "variance-check expects exactly one variance objective");
    const VarianceObjective& v = objs.variances[0];

    auto found = freq_feasibility(bundle.game, v.rho, v.b, v.c, state);
    Json j{{"command", "variance-check"}, {"state", state}, {"feasible", found.has_value()}};
    if (found) {
        FreqStats st = freq_stats(bundle.game, *found, v.rho, SupportRule::WithinScc);
        j["mp"] = to_string(st.mp);
        j["va"] = to_string(st.va);
        Json vec = Json::array();
        for (std::size_t e = 0; e < found->f.size(); ++e)
            vec.push_back(Json::array({bundle.game.edges()[e].first, bundle.game.edges()[e].second,
                                       to_string(found->f[e])}));
        j["frequencies"] = vec;
    }

    if (found && !trace_path.empty()) {
        // Restrict to the component carrying the support and drive its
        // empirical statistics along a phase schedule.
        auto comps = strongly_connected_components(bundle.game);
        int target_comp = -1;
        std::vector<int> comp_of(bundle.game.num_states(), -1);
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (int s : comps[c]) comp_of[s] = static_cast<int>(c);
        for (std::size_t e = 0; e < found->f.size(); ++e)
            if (found->f[e] > Rat(0)) target_comp = comp_of[bundle.game.edges()[e].first];
        std::vector<std::pair<int, int>> sub_edges;
        for (auto [a, t] : bundle.game.edges())
            if (comp_of[a] == target_comp && comp_of[t] == target_comp) sub_edges.emplace_back(a, t);
        Game sub(std::vector<Owner>(bundle.game.num_states(), Owner::Box), sub_edges);
        FrequencyVector f_sub;
        for (auto [a, t] : sub.edges())
            f_sub.f.push_back(found->f[bundle.game.edge_index(a, t)]);

        auto targets = trace_targets(sub, f_sub, phases);
        std::vector<Rat> eps;
        for (int i = 0; i < phases; ++i) eps.push_back(Rat(1, 10) * Rat(phases + 1, phases + 1 + i));
        int start = sub_edges[0].first;
        PhasePlan plan = phase_plan(sub, targets, eps, start);

        std::ostringstream csv;
        csv << "step,mp,va\n";
        long long total = plan.total_steps();
        long long stride = std::max<long long>(1, total / 400);
        double sum = 0, sumsq = 0;
        long long steps = 0;
        plan_visit(sub, plan, total, [&](int s) {
            double r = static_cast<double>(v.rho.values[s][0]) / v.rho.scale;
            sum += r;
            sumsq += r * r;
            ++steps;
            if (steps % stride == 0 || steps == total) {
                double mp = sum / steps;
                csv << steps << "," << mp << "," << (sumsq / steps - mp * mp) << "\n";
            }
        });
        write_text_file(trace_path, csv.str());
        j["trace_file"] = trace_path;
        j["trace_steps"] = total;
    }

    if (json) {
        out << j.dump(1) << "\n";
    } else if (found) {
        out << "feasible: mp = " << j["mp"].get<std::string>()
            << ", va = " << j["va"].get<std::string>() << "\n";
    } else {
        out << "no frequency vector found (support restricted to one component)\n";
    }
    return found ? 0 : 1;
}

int cmd_simulate(const std::string& game_path, const std::string& strategy_path, long long steps,
                 unsigned long long seed, bool json, const std::string& out_path,
                 std::ostream& out) {
    GameBundle bundle = load_bundle(game_path);
    FiniteStrategy sigma = strategy_from_json(read_json_file(strategy_path));
    Rng rng(seed);
    std::vector<int> adversary(bundle.game.num_states(), -1);
    for (int s = 0; s < bundle.game.num_states(); ++s) {
        const auto& succ = bundle.game.successors(s);
        adversary[s] = succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(rng)];
    }
    Lasso l = simulate(bundle.game, sigma, adversary, steps);
    Json j = lasso_to_json(l);
    if (!out_path.empty()) write_text_file(out_path, j.dump(1));
    if (json || out_path.empty())
        out << j.dump(1) << "\n";
    else
        out << "lasso with prefix " << l.prefix.size() << " and cycle " << l.cycle.size()
            << " written to " << out_path << "\n";
    return 0;
}

int cmd_check_run(const std::string& game_path, const std::string& lasso_path,
                  const std::vector<std::string>& obj_paths, bool json, std::ostream& out) {
    GameBundle bundle = load_bundle(game_path);
    Lasso l = lasso_from_json(read_json_file(lasso_path));
    validate_lasso(bundle.game, l);
    LoadedObjectives objs = load_objectives(obj_paths, bundle);

    bool all_ok = true;
    Json results = Json::array();
    for (const auto& phi : objs.windows.conjuncts) {
        CheckpointReport rep = lmp_sequence(l, phi);
        all_ok = all_ok && rep.satisfied();
        Json r{{"type", "window"}, {"satisfied", rep.satisfied()}};
        r["first_violation"] =
            rep.first_violation ? Json(*rep.first_violation) : Json(nullptr);
        results.push_back(r);
    }
    for (const auto& psi : objs.mean_payoffs) {
        Rat mp = mp_of_lasso(l, psi.rho)[0];
        bool ok = mp >= psi.b;
        all_ok = all_ok && ok;
        results.push_back(Json{{"type", "meanpayoff"}, {"mp", to_string(mp)}, {"satisfied", ok}});
    }
    for (const auto& v : objs.variances) {
        Rat mp = mp_of_lasso(l, v.rho)[0];
        Rat va = va_of_lasso(l, v.rho)[0];
        bool ok = mp >= v.b && va <= v.c;
        all_ok = all_ok && ok;
        results.push_back(Json{
            {"type", "variance"}, {"mp", to_string(mp)}, {"va", to_string(va)}, {"satisfied", ok}});
    }
    if (json) {
        out << Json{{"command", "check-run"}, {"results", results}, {"all_satisfied", all_ok}}
                   .dump(1)
            << "\n";
    } else {
        for (const auto& r : results)
            out << r["type"].get<std::string>() << ": "
                << (r["satisfied"].get<bool>() ? "satisfied" : "violated") << "\n";
    }
    return all_ok ? 0 : 1;
}

Json provenance_json(const ReductionInstance& inst) {
    Json j;
    j["variables"] = inst.n;
    j["clauses"] = inst.m;
    j["initial_state"] = inst.initial_state;
    j["shift"] = Json{{"t", to_string(inst.shift_t)}, {"c", to_string(Rat(inst.shift_c, 1))}};
    j["objective_original"] = objective_to_json(inst.objective_original);
    Json states = Json::array();
    for (int s = 0; s < inst.game.num_states(); ++s) {
        const GadgetRole& role = inst.roles[s];
        const char* kind = role.kind == GadgetRole::AssignS   ? "assign_s"
                           : role.kind == GadgetRole::AssignT ? "assign_t"
                           : role.kind == GadgetRole::ClauseR ? "clause_bonus"
                                                              : "force_chain";
        states.push_back(Json{{"id", s},
                              {"name", inst.state_names[s]},
                              {"kind", kind},
                              {"gadget", role.gadget},
                              {"var", role.var},
                              {"value", role.value}});
    }
    j["states"] = states;
    j["notes"] = inst.notes;
    return j;
}

int cmd_generate(bool qbf, const std::string& formula_path, const std::string& out_game,
                 const std::string& out_objective, const std::string& out_provenance, bool json,
                 std::ostream& out) {
    std::ifstream in(formula_path);
    if (!in) fail(ErrorKind::BadInput, "cannot open '" + formula_path + "'");
    ReductionInstance inst =
        qbf ? gen_balanced_qbf_instance(parse_qdimacs(in))
            : gen_balanced_sat_instance(parse_dimacs(in));

    GameBundle bundle;
    bundle.game = inst.game;
    bundle.rewards.emplace("r", inst.objective.rho);
    bundle.rewards.emplace("r_orig", inst.objective_original.rho);
    if (!out_game.empty()) write_text_file(out_game, game_to_json(bundle).dump(1));
    if (!out_objective.empty()) {
        WindowObjective named = inst.objective;
        named.rho.name = "r";
        write_text_file(out_objective, objective_to_json(named).dump(1));
    }
    if (!out_provenance.empty()) write_text_file(out_provenance, provenance_json(inst).dump(1));

    Json j{{"command", qbf ? "gen-qbf" : "gen-sat"},
           {"states", inst.game.num_states()},
           {"edges", inst.game.edges().size()},
           {"W", inst.objective.W},
           {"initial_state", inst.initial_state}};
    if (json)
        out << j.dump(1) << "\n";
    else
        out << "generated " << inst.game.num_states() << " states, window " << inst.objective.W
            << ", initial state " << inst.initial_state << "\n";
    return 0;
}

int cmd_oracle_compare(const std::string& kind, int count, unsigned long long seed, bool json,
                       std::ostream& out) {
    Rng rng(seed);
    OracleCaps caps;
    Json disagreements = Json::array();
    int ran = 0;
    for (int i = 0; i < count; ++i) {
        if (kind == "window" || kind == "product") {
            Game g = random_total_game(rng, 6, 8, 0.4);
            RewardFunction rho = random_reward(rng, g, 2);
            int conjuncts = kind == "product" ? 2 : 1;
            MultiObjective delta;
            for (int c = 0; c < conjuncts; ++c)
                delta.conjuncts.push_back(random_window_objective(rng, rho, {2, 3, 4}));
            StrategyScheme scheme = build_scheme(g, delta);
            auto oracle = window_winning_set(g, delta.conjuncts, caps);
            ++ran;
            for (int s = 0; s < g.num_states(); ++s)
                if (scheme.init_defined(s) != static_cast<bool>(oracle[s]))
                    disagreements.push_back(Json{{"instance", i}, {"state", s}});
        } else if (kind == "mp") {
            Game g = random_total_game(rng, 5, 6, 0.4);
            RewardFunction rho = random_reward(rng, g, 3);
            ValueTable solver = mp_value(g, rho);
            ValueTable oracle = mp_oracle(g, rho, caps);
            ++ran;
            for (int s = 0; s < g.num_states(); ++s)
                if (solver.value[s] != oracle.value[s])
                    disagreements.push_back(Json{{"instance", i}, {"state", s}});
        } else if (kind == "combined") {
            Game g = random_total_game(rng, 4, 5, 0.3);
            RewardFunction rho = random_reward(rng, g, 1);
            MultiObjective delta{{random_window_objective(rng, rho, {2})}};
            MeanPayoffObjective psi{rho, Rat(std::uniform_int_distribution<int>(0, 2)(rng), 2)};
            int s = std::uniform_int_distribution<int>(0, g.num_states() - 1)(rng);
            bool solver;
            bool oracle;
            try {
                oracle = combined_oracle(g, delta.conjuncts, rho, psi.b, s, caps);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::TooLarge) {
                    --i;  // resample a smaller instance
                    continue;
                }
                throw;
            }
            solver = solve_combined(g, delta, psi, s).achievable;
            ++ran;
            if (solver != oracle) disagreements.push_back(Json{{"instance", i}, {"state", s}});
        } else {
            fail(ErrorKind::BadInput, "unknown comparison kind '" + kind + "'");
        }
    }
    Json j{{"command", "oracle-compare"},
           {"kind", kind},
           {"instances", ran},
           {"disagreements", disagreements}};
    if (json)
        out << j.dump(1) << "\n";
    else
        out << ran << " instances, " << disagreements.size() << " disagreements\n";
    return disagreements.empty() ? 0 : 1;
}

int cmd_export_dot(const std::string& game_path, const std::string& out_path, std::ostream& out) {
    GameBundle bundle = load_bundle(game_path);
    std::string dot = export_dot(bundle);
    if (out_path.empty())
        out << dot;
    else
        write_text_file(out_path, dot);
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"window-stability, combined mean-payoff and variance-stability solving"};
    app.require_subcommand(1);

    std::string game_path, reward_name = "r", out_path, scheme_path, trace_path;
    std::string formula_path, out_game, out_objective, out_provenance, kind = "window";
    std::vector<std::string> obj_paths;
    std::vector<int> states;
    int state = 0, count = 100, phases = 12;
    long long steps = 1000000;
    std::size_t cap = 20000000;
    unsigned long long seed = 1;
    bool json = false;

    auto add_common = [&](CLI::App* cmd, bool needs_game = true) {
        if (needs_game) cmd->add_option("--game", game_path, "game file")->required();
        cmd->add_flag("--json", json, "machine-readable output");
    };

    auto* solve_window = app.add_subcommand("solve-window", "window-stability objectives");
    add_common(solve_window);
    solve_window->add_option("--objective", obj_paths, "objective file (repeatable)")->required();
    solve_window->add_option("--state", states, "queried state (repeatable; default all)");
    solve_window->add_option("--out", out_path, "write a witness strategy");
    solve_window->add_option("--export-scheme", scheme_path, "write the scheme transition table");
    solve_window->add_option("--cap", cap, "materialized pair cap");

    auto* solve_combined = app.add_subcommand("solve-combined", "windows plus a mean payoff");
    add_common(solve_combined);
    solve_combined->add_option("--objective", obj_paths)->required();
    solve_combined->add_option("--state", state, "initial state")->required();
    solve_combined->add_option("--out", out_path, "write the witness strategy");

    auto* max_bound_cmd = app.add_subcommand("max-bound", "maximal achievable mean-payoff bound");
    add_common(max_bound_cmd);
    max_bound_cmd->add_option("--objective", obj_paths)->required();
    max_bound_cmd->add_option("--reward", reward_name, "reward to optimize");
    max_bound_cmd->add_option("--state", state)->required();

    auto* variance = app.add_subcommand("variance-check", "variance-stability feasibility");
    add_common(variance);
    variance->add_option("--objective", obj_paths)->required();
    variance->add_option("--state", state, "initial state");
    variance->add_option("--trace", trace_path, "write a convergence trace CSV");
    variance->add_option("--phases", phases, "trace schedule phases");

    auto* simulate_cmd = app.add_subcommand("simulate", "play a strategy against a random adversary");
    add_common(simulate_cmd);
    simulate_cmd->add_option("--strategy", formula_path, "strategy file")->required();
    simulate_cmd->add_option("--steps", steps, "step budget");
    simulate_cmd->add_option("--seed", seed, "adversary seed");
    simulate_cmd->add_option("--out", out_path, "write the lasso");

    auto* check_run = app.add_subcommand("check-run", "check a lasso against objectives");
    add_common(check_run);
    check_run->add_option("--lasso", formula_path, "lasso file")->required();
    check_run->add_option("--objective", obj_paths)->required();

    auto* gen_sat = app.add_subcommand("gen-sat", "balanced-3-SAT reduction instance");
    add_common(gen_sat, false);
    gen_sat->add_option("--cnf", formula_path, "DIMACS input")->required();
    gen_sat->add_option("--out-game", out_game);
    gen_sat->add_option("--out-objective", out_objective);
    gen_sat->add_option("--out-provenance", out_provenance);

    auto* gen_qbf = app.add_subcommand("gen-qbf", "balanced-QBF reduction instance");
    add_common(gen_qbf, false);
    gen_qbf->add_option("--qbf", formula_path, "DIMACS-with-prefix input")->required();
    gen_qbf->add_option("--out-game", out_game);
    gen_qbf->add_option("--out-objective", out_objective);
    gen_qbf->add_option("--out-provenance", out_provenance);

    auto* compare = app.add_subcommand("oracle-compare", "solver vs brute-force corpus");
    add_common(compare, false);
    compare->add_option("--kind", kind, "window|product|mp|combined");
    compare->add_option("--count", count, "instances");
    compare->add_option("--seed", seed, "corpus seed");

    auto* dot = app.add_subcommand("export-dot", "Graphviz export");
    add_common(dot);
    dot->add_option("--out", out_path, "output path (default stdout)");

    std::reverse(args.begin(), args.end());  // CLI11 parses reversed vectors
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (solve_window->parsed())
            return cmd_solve_window(game_path, obj_paths, states, json, out_path, scheme_path, cap,
                                    out);
        if (solve_combined->parsed())
            return cmd_solve_combined(game_path, obj_paths, state, json, out_path, out);
        if (max_bound_cmd->parsed())
            return cmd_max_bound(game_path, obj_paths, reward_name, state, json, out);
        if (variance->parsed())
            return cmd_variance_check(game_path, obj_paths, state, json, trace_path, phases, out);
        if (simulate_cmd->parsed())
            return cmd_simulate(game_path, formula_path, steps, seed, json, out_path, out);
        if (check_run->parsed())
            return cmd_check_run(game_path, formula_path, obj_paths, json, out);
        if (gen_sat->parsed())
            return cmd_generate(false, formula_path, out_game, out_objective, out_provenance, json,
                                out);
        if (gen_qbf->parsed())
            return cmd_generate(true, formula_path, out_game, out_objective, out_provenance, json,
                                out);
        if (compare->parsed()) return cmd_oracle_compare(kind, count, seed, json, out);
        if (dot->parsed()) return cmd_export_dot(game_path, out_path, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::TooLarge ? 3 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace sg
