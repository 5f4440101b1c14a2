#include "sg/window.hpp"

#include <algorithm>

#include "sg/error.hpp"

namespace sg {

WindowMemory::WindowMemory(const WindowObjective& phi)
    : W(phi.W),
      D(phi.D),
      ell(phi.W / phi.D),
      dim(phi.rho.dim),
      cap(phi.rho.max_stored() * (phi.W - 1)) {}

std::vector<int> WindowMemory::initial() const { return std::vector<int>(2 + ell * dim, 0); }

std::vector<int> mem_update(const WindowMemory& wm, const WindowObjective& phi, int s,
                            const std::vector<int>& m) {
    const auto& r = phi.rho.values[s];
    const int i = m[0], j = m[1];
    auto plus = [&](long long a, int d) {
        return static_cast<int>(std::min(a + r[d], wm.cap));  // bounded addition
    };
    std::vector<int> out(m.size());
    if (i <= wm.D - 2) {
        // Mid-interval step: the j+1 open windows accumulate, the rest keep.
        out[0] = i + 1;
        out[1] = j;
        for (int rr = 0; rr < wm.ell; ++rr)
            for (int d = 0; d < wm.dim; ++d) {
                long long a = wm.alpha(m, rr, d);
                out[2 + rr * wm.dim + d] = rr <= j ? plus(a, d) : static_cast<int>(a);
            }
        return out;
    }
    // Checkpoint step: a fresh window opens, accumulated sums shift by one.
    out[0] = 0;
    out[1] = std::min(j + 1, wm.ell - 1);
    for (int d = 0; d < wm.dim; ++d) out[2 + d] = 0;
    for (int rr = 0; rr + 1 < wm.ell; ++rr)
        for (int d = 0; d < wm.dim; ++d) {
            long long a = wm.alpha(m, rr, d);
            out[2 + (rr + 1) * wm.dim + d] = rr <= j ? plus(a, d) : static_cast<int>(a);
        }
    return out;
}

bool window_check(const WindowMemory& wm, const WindowObjective& phi, const WindowSumBounds& b,
                  int s, const std::vector<int>& m) {
    if (m[0] != wm.D - 1 || m[1] != wm.ell - 1) return true;  // no window closes here
    for (int d = 0; d < wm.dim; ++d) {
        long long total = wm.alpha(m, wm.ell - 1, d) + phi.rho.values[s][d];
        if (total < b.lo[d] || total > b.hi[d]) return false;
    }
    return true;
}

StrategyScheme build_scheme(const Game& g, const WindowObjective& phi, std::size_t max_pairs) {
    validate_objective(g, phi);
    if (!phi.rho.all_non_negative())
        fail(ErrorKind::BadReward,
             "window scheme requires non-negative stored rewards (apply an affine shift)");
    WindowMemory wm(phi);
    WindowSumBounds bounds = window_sum_bounds(phi);

    StrategyScheme sch;
    sch.game = &g;
    sch.init_mem = sch.intern_mem(wm.initial());
    for (int s = 0; s < g.num_states(); ++s) sch.add_node(s, sch.init_mem);

    // Forward closure of all candidate initial pairs under the unconstrained
    // update; the fixed point below is computed on exactly this space.
    for (int i = 0; i < static_cast<int>(sch.nodes.size()); ++i) {
        if (sch.nodes.size() > max_pairs) fail(ErrorKind::TooLarge, "window scheme pair cap hit");
        const auto [s, m] = sch.nodes[i];
        int m2 = sch.intern_mem(mem_update(wm, phi, s, sch.mem_payload[m]));
        sch.up_mem.push_back(m2);
        std::vector<int> kids;
        for (int t : g.successors(s)) {
            int k = sch.node_of(t, m2);
            if (k < 0) {
                k = static_cast<int>(sch.nodes.size());
                sch.add_node(t, m2);
            }
            kids.push_back(k);
        }
        sch.succ.push_back(std::move(kids));
    }

    sch.box_csucc.assign(sch.nodes.size(), {});
    for (int i = 0; i < sch.num_nodes(); ++i)
        if (g.is_box(sch.nodes[i].state)) sch.box_csucc[i] = sch.succ[i];

    std::vector<char> static_ok(sch.nodes.size());
    for (int i = 0; i < sch.num_nodes(); ++i)
        static_ok[i] = window_check(wm, phi, bounds, sch.nodes[i].state,
                                    sch.mem_payload[sch.nodes[i].mem]);
    prune_greatest_fixpoint(sch, static_ok);

    sch.init_ok.assign(g.num_states(), 0);
    for (int s = 0; s < g.num_states(); ++s) {
        int n = sch.node_of(s, sch.init_mem);
        sch.init_ok[s] = n >= 0 && sch.alive[n];
    }
    sch.finalize_box_admissible();
    return sch;
}

StrategyScheme build_scheme(const Game& g, const MultiObjective& delta, std::size_t max_pairs) {
    validate_objective(g, delta);
    std::vector<StrategyScheme> parts;
    parts.reserve(delta.conjuncts.size());
    for (const auto& phi : delta.conjuncts) parts.push_back(build_scheme(g, phi, max_pairs));
    if (parts.size() == 1) return std::move(parts[0]);
    std::vector<const StrategyScheme*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    return product_scheme(ptrs);
}

}  // namespace sg
