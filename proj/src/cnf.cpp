#include "sg/cnf.hpp"

#include <cstdlib>
#include <functional>
#include <istream>
#include <sstream>

#include "sg/error.hpp"

namespace sg {

bool Cnf::eval(const std::vector<bool>& assignment) const {
    for (const Clause& c : clauses) {
        bool sat = false;
        for (int lit : c) {
            int v = std::abs(lit);
            if (assignment[v - 1] == (lit > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

bool Qbf::all_existential() const {
    for (Quant q : quants)
        if (q == Quant::ForAll) return false;
    return true;
}

namespace {

void check_clause(const Clause& c, int n) {
    if (c.empty()) fail(ErrorKind::BadFormula, "empty clause");
    for (int lit : c)
        if (lit == 0 || std::abs(lit) > n)
            fail(ErrorKind::BadFormula, "literal " + std::to_string(lit) + " out of range");
}

}  // namespace

Cnf parse_dimacs(std::istream& in) {
    Cnf f;
    int expected_clauses = -1;
    std::string line;
    Clause current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, kind;
            if (!(ls >> p >> kind >> f.num_vars >> expected_clauses) || kind != "cnf")
                fail(ErrorKind::BadInput, "malformed DIMACS header");
            continue;
        }
        if (line[0] == 'q') continue;  // quantifier prefix handled by parse_qdimacs
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                check_clause(current, f.num_vars);
                f.clauses.push_back(current);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) fail(ErrorKind::BadInput, "clause not terminated by 0");
    if (expected_clauses >= 0 && expected_clauses != static_cast<int>(f.clauses.size()))
        fail(ErrorKind::BadInput, "clause count does not match the header");
    return f;
}

Qbf parse_qdimacs(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    Qbf f;
    {
        std::istringstream pass(text);
        f.matrix = parse_dimacs(pass);
    }
    f.quants.assign(f.matrix.num_vars, Quant::Exists);
    std::istringstream pass(text);
    std::string line;
    bool saw_prefix = false;
    while (std::getline(pass, line)) {
        if (line.empty() || line[0] != 'q') continue;
        if (saw_prefix) fail(ErrorKind::BadInput, "duplicate quantifier prefix line");
        saw_prefix = true;
        std::istringstream ls(line);
        std::string tag, kind;
        ls >> tag;
        int var;
        while (ls >> kind >> var) {
            if (var < 1 || var > f.matrix.num_vars)
                fail(ErrorKind::BadInput, "quantified variable out of range");
            if (kind == "e")
                f.quants[var - 1] = Quant::Exists;
            else if (kind == "a")
                f.quants[var - 1] = Quant::ForAll;
            else
                fail(ErrorKind::BadInput, "unknown quantifier '" + kind + "'");
        }
    }
    return f;
}

std::string write_dimacs(const Cnf& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
    for (const Clause& c : f.clauses) {
        for (int lit : c) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

std::string write_qdimacs(const Qbf& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars() << " " << f.matrix.clauses.size() << "\n";
    out << "q";
    for (int i = 0; i < f.num_vars(); ++i)
        out << " " << (f.quants[i] == Quant::Exists ? "e" : "a") << " " << (i + 1);
    out << "\n";
    for (const Clause& c : f.matrix.clauses) {
        for (int lit : c) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

Cnf drop_tautologies(const Cnf& f) {
    Cnf out;
    out.num_vars = f.num_vars;
    for (const Clause& c : f.clauses) {
        bool taut = false;
        for (int a : c)
            for (int b : c)
                if (a == -b) taut = true;
        if (!taut) out.clauses.push_back(c);
    }
    return out;
}

Qbf qbf_to_balanced(const Qbf& f) {
    int n = f.num_vars();
    Qbf out;
    out.quants = f.quants;
    out.quants.insert(out.quants.end(), n, Quant::Exists);
    out.matrix.num_vars = 2 * n;
    out.matrix.clauses = f.matrix.clauses;
    for (int i = n + 1; i <= 2 * n; ++i) out.matrix.clauses.push_back({i, -i});
    return out;
}

bool qbf_eval(const Qbf& f) {
    int n = f.num_vars();
    std::vector<bool> assignment(n, false);
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == n) return f.matrix.eval(assignment);
        assignment[i] = false;
        bool v0 = rec(i + 1);
        if (f.quants[i] == Quant::Exists && v0) return true;
        if (f.quants[i] == Quant::ForAll && !v0) return false;
        assignment[i] = true;
        return rec(i + 1);
    };
    return rec(0);
}

}  // namespace sg
