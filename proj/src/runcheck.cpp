#include "sg/runcheck.hpp"

#include <numeric>

#include "sg/error.hpp"

namespace sg {

std::vector<Rat> mp_of_lasso(const Lasso& l, const RewardFunction& rho) {
    if (l.cycle.empty()) fail(ErrorKind::BadLasso, "lasso cycle is empty");
    std::vector<Int> sums(rho.dim, 0);
    for (int s : l.cycle)
        for (int d = 0; d < rho.dim; ++d) sums[d] += rho.values[s][d];
    std::vector<Rat> out;
    Int den = Int(l.cycle.size()) * rho.scale;
    for (int d = 0; d < rho.dim; ++d) out.emplace_back(sums[d], den);
    return out;
}

std::vector<Rat> va_of_lasso(const Lasso& l, const RewardFunction& rho) {
    std::vector<Rat> mp = mp_of_lasso(l, rho);
    std::vector<Rat> sums(rho.dim, Rat(0));
    for (int s : l.cycle)
        for (int d = 0; d < rho.dim; ++d) {
            Rat dev = rho.semantic(s, d) - mp[d];
            sums[d] += dev * dev;
        }
    for (int d = 0; d < rho.dim; ++d) sums[d] /= Int(l.cycle.size());
    return sums;
}

CheckpointReport lmp_sequence(const Lasso& l, const WindowObjective& phi) {
    if (phi.W < 1 || phi.D < 1 || phi.W % phi.D != 0)
        fail(ErrorKind::BadObjective, "D must divide W");
    if (l.cycle.empty()) fail(ErrorKind::BadLasso, "lasso cycle is empty");

    long long period = std::lcm<long long>(static_cast<long long>(l.cycle.size()), phi.D);
    long long horizon = static_cast<long long>(l.prefix.size()) + period + phi.W;
    long long num_checkpoints = horizon / phi.D + 1;

    auto bounds = window_sum_bounds(phi);
    CheckpointReport rep;
    for (long long cp = 0; cp < num_checkpoints; ++cp) {
        std::vector<long long> sum(phi.rho.dim, 0);
        for (int i = 0; i < phi.W; ++i) {
            int s = l.at(cp * phi.D + i);
            for (int d = 0; d < phi.rho.dim; ++d) sum[d] += phi.rho.values[s][d];
        }
        std::vector<Rat> v;
        bool ok = true;
        for (int d = 0; d < phi.rho.dim; ++d) {
            v.emplace_back(Int(sum[d]), Int(phi.W) * phi.rho.scale);
            ok = ok && bounds.lo[d] <= sum[d] && sum[d] <= bounds.hi[d];
        }
        rep.values.push_back(std::move(v));
        if (!ok && !rep.first_violation) rep.first_violation = static_cast<int>(cp);
    }
    return rep;
}

bool check_window_run(const Lasso& l, const MultiObjective& delta) {
    for (std::size_t i = 0; i < delta.conjuncts.size(); ++i) {
        CheckpointReport rep = lmp_sequence(l, delta.conjuncts[i]);
        if (!rep.satisfied()) return false;
    }
    return true;
}

}  // namespace sg
