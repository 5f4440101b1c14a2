#include "sg/variance.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sg/error.hpp"

namespace sg {

namespace {

std::vector<Rat> inflow_per_state(const Game& g, const FrequencyVector& f) {
    std::vector<Rat> fs(g.num_states(), Rat(0));
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) fs[edges[e].second] += f.f[e];
    return fs;
}

void check_support(const Game& g, const FrequencyVector& f, SupportRule rule) {
    const auto& edges = g.edges();
    std::vector<std::pair<int, int>> support;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (f.f[e] > Rat(0)) support.push_back(edges[e]);
    if (support.empty()) fail(ErrorKind::NotDistribution, "empty support");

    if (rule == SupportRule::WithinScc) {
        auto comps = strongly_connected_components(g);
        std::vector<int> comp_of(g.num_states());
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (int s : comps[c]) comp_of[s] = static_cast<int>(c);
        int c0 = comp_of[support[0].first];
        for (auto [a, b] : support)
            if (comp_of[a] != c0 || comp_of[b] != c0)
                fail(ErrorKind::SupportNotScc,
                     "support spans more than one strongly connected component");
        return;
    }
    // Strict: the support subgraph itself must be strongly connected on the
    // states it touches.
    std::vector<int> states;
    for (auto [a, b] : support) {
        states.push_back(a);
        states.push_back(b);
    }
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    std::vector<Owner> owners(g.num_states(), Owner::Box);
    Game sub(owners, support);
    auto comps = strongly_connected_components(sub);
    // Support states must form exactly one component of the support graph.
    std::vector<int> comp_of(g.num_states(), -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int s : comps[c]) comp_of[s] = static_cast<int>(c);
    for (int s : states)
        if (comp_of[s] != comp_of[states[0]])
            fail(ErrorKind::SupportNotScc, "support subgraph is not strongly connected");
}

}  // namespace

FreqStats freq_stats(const Game& g, const FrequencyVector& f, const RewardFunction& rho,
                     SupportRule rule) {
    if (rho.dim != 1) fail(ErrorKind::BadReward, "frequency statistics require dim 1");
    validate_reward(g, rho);
    const auto& edges = g.edges();
    if (f.f.size() != edges.size())
        fail(ErrorKind::NotDistribution, "frequency vector length does not match the edge list");

    Rat total(0);
    for (const Rat& x : f.f) {
        if (x < Rat(0)) fail(ErrorKind::NotDistribution, "negative edge frequency");
        total += x;
    }
    if (total != Rat(1)) fail(ErrorKind::NotDistribution, "frequencies sum to " + to_string(total));

    for (int s = 0; s < g.num_states(); ++s) {
        Rat in(0), out(0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (edges[e].second == s) in += f.f[e];
            if (edges[e].first == s) out += f.f[e];
        }
        if (in != out)
            fail(ErrorKind::FlowViolation, "state " + std::to_string(s) + " has inflow " +
                                               to_string(in) + " but outflow " + to_string(out));
    }
    check_support(g, f, rule);

    auto fs = inflow_per_state(g, f);
    FreqStats st{Rat(0), Rat(0)};
    for (int s = 0; s < g.num_states(); ++s) st.mp += fs[s] * rho.semantic(s);
    for (int s = 0; s < g.num_states(); ++s) {
        Rat dev = rho.semantic(s) - st.mp;
        st.va += fs[s] * dev * dev;
    }
    return st;
}

bool freq_constraints_check(const Game& g, const FrequencyVector& f, const RewardFunction& rho,
                            const Rat& b, const Rat& c, SupportRule rule) {
    FreqStats st = freq_stats(g, f, rho, rule);
    return st.mp >= b && st.va <= c;
}

namespace {

struct CycleInfo {
    std::vector<int> states;
    Rat mp;
    FrequencyVector freq;  // 1/len on each cycle edge
};

FrequencyVector cycle_freq(const Game& g, const std::vector<int>& cyc) {
    FrequencyVector f;
    f.f.assign(g.edges().size(), Rat(0));
    int len = static_cast<int>(cyc.size());
    for (int i = 0; i < len; ++i) {
        int e = g.edge_index(cyc[i], cyc[(i + 1) % len]);
        f.f[e] += Rat(1, len);
    }
    return f;
}

FrequencyVector mix(const FrequencyVector& a, const FrequencyVector& b, const Rat& lambda) {
    FrequencyVector out;
    out.f.reserve(a.f.size());
    for (std::size_t e = 0; e < a.f.size(); ++e)
        out.f.push_back(lambda * a.f[e] + (Rat(1) - lambda) * b.f[e]);
    return out;
}

Rat freq_mp(const Game& g, const FrequencyVector& f, const RewardFunction& rho) {
    auto fs = inflow_per_state(g, f);
    Rat mp(0);
    for (int s = 0; s < g.num_states(); ++s) mp += fs[s] * rho.semantic(s);
    return mp;
}

Rat freq_va(const Game& g, const FrequencyVector& f, const RewardFunction& rho, const Rat& mp) {
    auto fs = inflow_per_state(g, f);
    Rat va(0);
    for (int s = 0; s < g.num_states(); ++s) {
        Rat dev = rho.semantic(s) - mp;
        va += fs[s] * dev * dev;
    }
    return va;
}

}  // namespace

std::optional<FrequencyVector> freq_feasibility(const Game& g, const RewardFunction& rho,
                                                const Rat& b, const Rat& c, int from,
                                                std::size_t cycle_cap) {
    if (rho.dim != 1) fail(ErrorKind::BadReward, "feasibility search requires dim 1");
    validate_reward(g, rho);
    auto reach = reachable_states(g, from);
    std::vector<char> reachable(g.num_states(), 0);
    for (int s : reach) reachable[s] = 1;

    auto comps = strongly_connected_components(g);
    std::optional<FrequencyVector> best;
    std::optional<std::pair<Rat, std::vector<Rat>>> best_key;  // (va, lexicographic f)

    auto consider = [&](const FrequencyVector& f) {
        Rat mp = freq_mp(g, f, rho);
        if (mp < b) return;
        Rat va = freq_va(g, f, rho, mp);
        if (va > c) return;
        std::pair<Rat, std::vector<Rat>> key{va, f.f};
        if (!best_key || key < *best_key) {
            best_key = key;
            best = f;
        }
    };

    for (const auto& comp : comps) {
        if (!reachable[comp[0]]) continue;
        std::vector<char> in_comp(g.num_states(), 0);
        for (int s : comp) in_comp[s] = 1;
        std::vector<std::pair<int, int>> sub_edges;
        for (auto [a, t] : g.edges())
            if (in_comp[a] && in_comp[t]) sub_edges.emplace_back(a, t);
        if (sub_edges.empty()) continue;
        Game sub(std::vector<Owner>(g.num_states(), Owner::Box), sub_edges);

        std::vector<CycleInfo> cycles;
        for (auto& cyc : simple_cycles(sub, cycle_cap)) {
            CycleInfo info;
            info.freq = cycle_freq(g, cyc);
            Int sum = 0;
            for (int s : cyc) sum += rho.values[s][0];
            info.mp = Rat(sum, Int(cyc.size()) * rho.scale);
            info.states = std::move(cyc);
            cycles.push_back(std::move(info));
        }
        // Vertices of {flow polytope, mp >= b}: qualifying single cycles and
        // straddling pairs mixed onto the mp = b hyperplane.
        for (const auto& z : cycles)
            if (z.mp >= b) consider(z.freq);
        for (const auto& hi : cycles) {
            if (hi.mp <= b) continue;
            for (const auto& lo : cycles) {
                if (lo.mp >= b) continue;
                Rat lambda = (b - lo.mp) / (hi.mp - lo.mp);
                consider(mix(hi.freq, lo.freq, lambda));
            }
        }
    }
    if (best && !freq_constraints_check(g, *best, rho, b, c, SupportRule::WithinScc))
        fail(ErrorKind::BadInput, "feasibility search produced an unverifiable vector");
    return best;
}

Lasso euler_strategy(const Game& g, const FrequencyVector& f, int start) {
    freq_stats(g, f, RewardFunction{"", 1, 1,
                                    std::vector<std::vector<long long>>(
                                        g.num_states(), std::vector<long long>{0})},
               SupportRule::Strict);  // invariant checks, strict support

    const auto& edges = g.edges();
    Int lcm_den = 1;
    for (const Rat& x : f.f)
        if (x > Rat(0)) lcm_den = boost::multiprecision::lcm(lcm_den, x.denominator());
    // Integer multiplicity per edge.
    std::vector<long long> mult(edges.size(), 0);
    long long total = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        mult[e] = to_ll(f.f[e].numerator() * (lcm_den / f.f[e].denominator()));
        total += mult[e];
    }

    std::vector<std::map<int, long long>> pool(g.num_states());  // remaining out-edges
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (mult[e] > 0) pool[edges[e].first][edges[e].second] += mult[e];

    if (start < 0) {
        for (int s = 0; s < g.num_states() && start < 0; ++s)
            if (!pool[s].empty()) start = s;
    }
    if (start < 0 || pool[start].empty())
        fail(ErrorKind::NotEulerian, "start state has no outgoing support edge");

    // Hierholzer: walk greedily, back up when stuck; the reversed finish
    // order is the circuit.
    std::vector<int> stack{start}, circuit;
    while (!stack.empty()) {
        int v = stack.back();
        if (pool[v].empty()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            auto it = pool[v].begin();  // smallest target: deterministic output
            int t = it->first;
            if (--it->second == 0) pool[v].erase(it);
            stack.push_back(t);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    if (static_cast<long long>(circuit.size()) != total + 1)
        fail(ErrorKind::NotEulerian, "support multigraph admits no single Euler circuit");
    circuit.pop_back();  // drop the repeated start

    Lasso l;
    l.cycle = std::move(circuit);
    validate_lasso(g, l);
    return l;
}

namespace {

// Smallest L such that every rotation of the cycle keeps, for all L' >= L,
// the empirical count of each edge over L'+1 transitions at least
// (f_e - eps) * (L'+1). Scanned downward from the analytic cutoff
// ceil(P * f_max / eps) past which the bound always holds.
long long stabilization_length(const Game& g, const std::vector<int>& cycle,
                               const FrequencyVector& f, const Rat& eps) {
    const int P = static_cast<int>(cycle.size());
    const auto& edges = g.edges();
    std::vector<int> edge_of_pos(P);
    for (int i = 0; i < P; ++i) edge_of_pos[i] = g.edge_index(cycle[i], cycle[(i + 1) % P]);

    // Per-edge prefix counts over two periods.
    std::vector<std::vector<long long>> pref;
    std::vector<std::size_t> active;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (f.f[e] > Rat(0)) active.push_back(e);
    std::vector<long long> per_period(edges.size(), 0);
    for (int i = 0; i < P; ++i) ++per_period[edge_of_pos[i]];

    pref.assign(edges.size(), std::vector<long long>(2 * P + 1, 0));
    for (int i = 0; i < 2 * P; ++i) {
        int e = edge_of_pos[i % P];
        for (std::size_t q : active) pref[q][i + 1] = pref[q][i];
        ++pref[e][i + 1];
    }

    Rat fmax(0);
    for (std::size_t e : active) fmax = std::max(fmax, f.f[e]);
    long long cutoff = to_ll(rat_ceil(Rat(P, 1) * fmax / eps)) + 1;

    // thresholds: count * den >= num * (L'+1) with (f_e - eps) = num/den.
    std::vector<long long> num(edges.size()), den(edges.size());
    for (std::size_t e : active) {
        Rat t = f.f[e] - eps;
        num[e] = to_ll(t.numerator());
        den[e] = to_ll(t.denominator());
    }

    auto count = [&](std::size_t e, int r, long long len) {
        long long q = len / P, rem = len % P;
        return q * per_period[e] + (pref[e][r + rem] - pref[e][r]);
    };
    for (long long lp = cutoff - 1; lp >= 0; --lp) {
        for (int r = 0; r < P; ++r)
            for (std::size_t e : active) {
                if (num[e] <= 0) continue;
                if (count(e, r, lp + 1) * den[e] < num[e] * (lp + 1)) return lp + 1;
            }
    }
    return 0;
}

}  // namespace

PhasePlan phase_plan(const Game& g, const std::vector<FrequencyVector>& targets,
                     const std::vector<Rat>& eps, int start_state, long long final_min_steps,
                     long long step_cap) {
    if (targets.empty() || targets.size() != eps.size())
        fail(ErrorKind::BadSchedule, "need one epsilon per phase");
    if (eps[0] > Rat(1, 10)) fail(ErrorKind::BadSchedule, "epsilon_0 must be at most 1/10");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] <= Rat(0)) fail(ErrorKind::BadSchedule, "epsilons must stay positive");
        if (i > 0 && eps[i] >= eps[i - 1])
            fail(ErrorKind::BadSchedule, "epsilons must be strictly decreasing");
    }
    const auto& edges = g.edges();
    for (const auto& f : targets)
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (f.f[e] <= Rat(0))
                fail(ErrorKind::BadSchedule, "phase targets must have full edge support");

    const std::size_t n = targets.size();
    PhasePlan plan;
    plan.phases.resize(n);

    // Stabilization lengths are computed on a reference rotation; rotating
    // the Euler circuit does not change them (all rotations are scanned).
    for (std::size_t i = 0; i < n; ++i) {
        plan.phases[i].target = targets[i];
        plan.phases[i].eps = eps[i];
        Lasso ref = euler_strategy(g, targets[i], start_state);
        plan.phases[i].stabilization = stabilization_length(g, ref.cycle, targets[i], eps[i]);
    }

    // Walk the run, switching phases as soon as both cutover conditions
    // hold: empirical counts within eps_i of f^i, and eps_i^2 * K covering
    // the next phase's stabilization length.
    std::vector<long long> counts(edges.size(), 0);
    long long pos = 0;
    int state = start_state;
    for (std::size_t i = 0; i < n; ++i) {
        Phase& ph = plan.phases[i];
        ph.cycle = euler_strategy(g, targets[i], state).cycle;
        const int P = static_cast<int>(ph.cycle.size());
        std::vector<int> edge_of_pos(P);
        for (int j = 0; j < P; ++j)
            edge_of_pos[j] = g.edge_index(ph.cycle[j], ph.cycle[(j + 1) % P]);

        std::vector<long long> num(edges.size()), den(edges.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            Rat t = targets[i].f[e] - eps[i];
            num[e] = to_ll(t.numerator());
            den[e] = to_ll(t.denominator());
        }
        long long min_end = pos + 1;
        if (i + 1 < n) {
            Rat need = Rat(plan.phases[i + 1].stabilization, 1) / (eps[i] * eps[i]);
            min_end = std::max(min_end, to_ll(rat_ceil(need)));
        } else if (final_min_steps >= 0) {
            min_end = std::max(min_end, final_min_steps);
        }

        long long offset = 0;  // position inside the phase cycle
        while (true) {
            if (pos > step_cap) fail(ErrorKind::TooLarge, "phase plan exceeded its step budget");
            ++counts[edge_of_pos[offset % P]];
            ++pos;
            offset = (offset + 1) % P;
            if (pos < min_end) continue;
            bool ok = true;
            for (std::size_t e = 0; e < edges.size() && ok; ++e)
                if (num[e] > 0 && counts[e] * den[e] < num[e] * pos) ok = false;
            if (ok) break;
        }
        ph.end = pos;
        state = ph.cycle[offset % P];
    }
    return plan;
}

void plan_visit(const Game& g, const PhasePlan& plan, long long n,
                const std::function<void(int)>& visit) {
    (void)g;
    long long pos = 0;
    for (const Phase& ph : plan.phases) {
        const int P = static_cast<int>(ph.cycle.size());
        long long offset = 0;
        while (pos < ph.end && pos < n) {
            visit(ph.cycle[offset % P]);
            ++pos;
            ++offset;
        }
        if (pos >= n) return;
    }
}

std::vector<Rat> empirical_frequencies(const Game& g, const std::vector<int>& prefix) {
    if (prefix.size() < 2) fail(ErrorKind::BadInput, "prefix too short to count transitions");
    std::vector<long long> counts(g.edges().size(), 0);
    long long transitions = static_cast<long long>(prefix.size()) - 1;
    for (std::size_t i = 0; i + 1 < prefix.size(); ++i) {
        int e = g.edge_index(prefix[i], prefix[i + 1]);
        if (e < 0) fail(ErrorKind::BadLasso, "prefix leaves the edge relation");
        ++counts[e];
    }
    std::vector<Rat> out;
    out.reserve(counts.size());
    for (long long c : counts) out.emplace_back(Int(c), Int(transitions));
    return out;
}

RunMeasurement measure_plan(const Game& g, const RewardFunction& rho, const PhasePlan& plan,
                            long long n) {
    if (n < 0) n = plan.total_steps();
    std::vector<long long> state_count(g.num_states(), 0);
    std::vector<long long> edge_count(g.edges().size(), 0);
    int prev = -1;
    long long steps = 0;
    plan_visit(g, plan, n, [&](int s) {
        ++state_count[s];
        if (prev >= 0) ++edge_count[g.edge_index(prev, s)];
        prev = s;
        ++steps;
    });
    RunMeasurement m;
    double total = static_cast<double>(steps);
    for (int s = 0; s < g.num_states(); ++s)
        m.mp += state_count[s] / total * (static_cast<double>(rho.values[s][0]) / rho.scale);
    for (int s = 0; s < g.num_states(); ++s) {
        double dev = static_cast<double>(rho.values[s][0]) / rho.scale - m.mp;
        m.va += state_count[s] / total * dev * dev;
    }
    for (long long c : edge_count) m.edge_freq.push_back(c / std::max(1.0, total - 1));
    return m;
}

Rat variance_expression(const Rat& x, const Rat& f_c) {
    Rat sq = x * x + (Rat(4) - x) * (Rat(4) - x);
    Rat base = (x - Rat(1)) / Rat(2) * sq + (Rat(2) - x) * (Rat(1) - x) * (Rat(1) - x);
    Rat coeff = Rat(11, 2) * sq + (Rat(-10) - x) * (Rat(-10) - x) -
                Rat(12) * (Rat(1) - x) * (Rat(1) - x);
    return base + f_c * coeff;
}

}  // namespace sg
