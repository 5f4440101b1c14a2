#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sg {

// Literal: variable index 1..n, negated as negative int (DIMACS style).
using Clause = std::vector<int>;

struct Cnf {
    int num_vars = 0;
    std::vector<Clause> clauses;

    bool eval(const std::vector<bool>& assignment) const;  // assignment[i-1] for x_i
};

enum class Quant { Exists, ForAll };

// Prenex 3-CNF quantified formula. quants[i-1] quantifies x_i.
struct Qbf {
    std::vector<Quant> quants;
    Cnf matrix;

    int num_vars() const { return static_cast<int>(quants.size()); }
    bool all_existential() const;
};

// DIMACS-like text: optional comments "c ...", a header "p cnf <n> <m>",
// clauses terminated by 0. QBF adds a single prefix line "q e 1 a 2 ..."
// listing the quantifier of each variable in order.
Cnf parse_dimacs(std::istream& in);
Qbf parse_qdimacs(std::istream& in);
std::string write_dimacs(const Cnf& f);
std::string write_qdimacs(const Qbf& f);

// Tautological clauses (containing some x and its negation) are satisfied
// by every assignment; dropping them preserves models and balanced models.
Cnf drop_tautologies(const Cnf& f);

// Balancing transform: doubles the variable count with fresh existential
// variables x_{n+1}..x_{2n} and appends the n tautological clauses
// (x_i or not x_i). The output has a balanced model iff the input has a
// model: any model extends by setting exactly n - (ones used) of the fresh
// variables to 1.
Qbf qbf_to_balanced(const Qbf& f);

// Plain QBF truth value by exhaustive tree evaluation (no balance
// requirement). Intended for cross-checks on small formulas.
bool qbf_eval(const Qbf& f);

}  // namespace sg
