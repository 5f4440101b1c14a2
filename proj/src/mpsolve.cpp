#include "sg/mpsolve.hpp"

#include <algorithm>
#include <deque>

#include "sg/error.hpp"
#include "sg/window.hpp"

namespace sg {

namespace {

long long checked_ll(const Int& x, const char* what) {
    static const Int kMax = Int(1) << 62;
    if (x > kMax || x < -kMax) fail(ErrorKind::TooLarge, std::string(what) + " exceeds 2^62");
    return to_ll(x);
}

}  // namespace

MpThresholdResult mp_threshold(const Game& g, const RewardFunction& rho, const Rat& b) {
    if (rho.dim != 1) fail(ErrorKind::BadReward, "mean-payoff solving requires dim 1");
    validate_reward(g, rho);
    const int n = g.num_states();

    // Shifted integer weight of leaving s.
    std::vector<long long> w(n);
    long long max_neg = 0;
    for (int s = 0; s < n; ++s) {
        w[s] = checked_ll(b.denominator() * rho.values[s][0] - b.numerator() * rho.scale,
                          "shifted weight");
        max_neg = std::max(max_neg, -w[s]);
    }

    MpThresholdResult res;
    res.strategy.assign(n, -1);
    if (max_neg == 0) {
        res.winning.assign(n, 1);
        for (int s = 0; s < n; ++s)
            if (g.is_box(s)) res.strategy[s] = g.successors(s)[0];
        return res;
    }

    const long long top = static_cast<long long>(n - 1) * max_neg;  // losing beyond this
    std::vector<long long> f(n, 0);
    std::vector<char> dirty(n, 1);
    std::deque<int> todo;
    for (int s = 0; s < n; ++s) todo.push_back(s);

    auto lift_through = [&](int s, int t) -> long long {
        if (f[t] > top) return top + 1;
        return std::max<long long>(0, f[t] - w[s]);
    };

    while (!todo.empty()) {
        int s = todo.front();
        todo.pop_front();
        dirty[s] = 0;
        if (f[s] > top) continue;
        long long best;
        if (g.is_box(s)) {
            best = top + 1;
            for (int t : g.successors(s)) best = std::min(best, lift_through(s, t));
        } else {
            best = 0;
            for (int t : g.successors(s)) best = std::max(best, lift_through(s, t));
        }
        if (best > f[s]) {
            f[s] = std::min(best, top + 1);
            ++res.lifts;
            for (int p : g.predecessors(s))
                if (!dirty[p]) {
                    dirty[p] = 1;
                    todo.push_back(p);
                }
        }
    }

    res.winning.assign(n, 0);
    for (int s = 0; s < n; ++s) res.winning[s] = f[s] <= top;
    for (int s = 0; s < n; ++s) {
        if (!g.is_box(s) || !res.winning[s]) continue;
        int pick = -1;
        long long pv = 0;
        for (int t : g.successors(s)) {
            long long v = lift_through(s, t);
            if (pick == -1 || v < pv) {
                pick = t;
                pv = v;
            }
        }
        res.strategy[s] = pick;
    }
    return res;
}

Rat mp_value_at(const Game& g, const RewardFunction& rho, int s) {
    auto win = [&](const Rat& b) { return static_cast<bool>(mp_threshold(g, rho, b).winning[s]); };
    Rat max_reward = rat(rho.max_stored(), rho.scale);
    if (win(max_reward)) return max_reward;  // cannot exceed the max reward

    // The value is a reachable cycle average with denominator at most Qmax.
    // Stern-Brocot descent keeps every probed threshold's denominator small,
    // which keeps the shifted weights (and so the energy iteration) small.
    const Int Qmax = Int(g.num_states()) * rho.scale;

    // Integer bracket win(lo_i), not win(hi_i).
    Int lo_i = rat_floor(rat(rho.min_stored(), rho.scale));
    Int hi_i = rat_floor(max_reward) + 1;
    while (hi_i - lo_i > 1) {
        Int mid = (lo_i + hi_i) / 2;
        (win(Rat(mid, 1)) ? lo_i : hi_i) = mid;
    }

    Int pL = lo_i, qL = 1, pR = hi_i, qR = 1;  // win(L), not win(R), Farey neighbors
    while (qL + qR <= Qmax) {
        if (win(Rat(pL + pR, qL + qR))) {
            // Gallop towards R: largest j with denominator in range still winning.
            Int j = 1, step = 1;
            while (true) {
                Int j2 = j + step;
                if (qL + j2 * qR > Qmax || !win(Rat(pL + j2 * pR, qL + j2 * qR))) {
                    if (step == 1) break;
                    step = 1;
                    continue;
                }
                j = j2;
                step *= 2;
            }
            pL += j * pR;
            qL += j * qR;
        } else {
            // Gallop towards L while losing; overshooting past the value is
            // impossible because probes must keep losing to advance.
            Int j = 1, step = 1;
            while (true) {
                Int j2 = j + step;
                if (j2 * qL + qR > 4 * Qmax || win(Rat(j2 * pL + pR, j2 * qL + qR))) {
                    if (step == 1) break;
                    step = 1;
                    continue;
                }
                j = j2;
                step *= 2;
            }
            pR += j * pL;
            qR += j * qL;
        }
    }
    // No fraction with denominator <= Qmax lies strictly between L and R,
    // and the value sits in [L, R): it is L.
    return Rat(pL, qL);
}

ValueTable mp_value(const Game& g, const RewardFunction& rho) {
    ValueTable t;
    t.value.reserve(g.num_states());
    for (int s = 0; s < g.num_states(); ++s) t.value.push_back(mp_value_at(g, rho, s));
    return t;
}

CombinedResult solve_combined(const Game& g, const MultiObjective& delta,
                              const MeanPayoffObjective& psi, int s) {
    if (psi.rho.dim != 1)
        fail(ErrorKind::BadReward, "combined solving supports one-dimensional mean payoff only");
    validate_reward(g, psi.rho);
    StrategyScheme scheme = build_scheme(g, delta);
    CombinedResult out;
    if (!scheme.init_defined(s)) return out;

    ProductGame pg = product_game(scheme);
    RewardFunction lifted = lift_reward(pg, psi.rho);
    MpThresholdResult mp = mp_threshold(pg.game, lifted, psi.b);
    int p0 = scheme.node_of(s, scheme.init_mem);
    if (!mp.winning[p0]) return out;
    out.achievable = true;
    out.strategy = induce_strategy(pg, mp.strategy, s);
    return out;
}

std::optional<Rat> max_bound(const Game& g, const MultiObjective& delta,
                             const RewardFunction& rho, int s) {
    if (rho.dim != 1) fail(ErrorKind::BadReward, "max bound requires a one-dimensional reward");
    validate_reward(g, rho);
    StrategyScheme scheme = build_scheme(g, delta);
    if (!scheme.init_defined(s)) return std::nullopt;
    ProductGame pg = product_game(scheme);
    RewardFunction lifted = lift_reward(pg, rho);
    return mp_value_at(pg.game, lifted, scheme.node_of(s, scheme.init_mem));
}

}  // namespace sg
