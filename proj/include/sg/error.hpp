#pragma once

#include <stdexcept>
#include <string>

namespace sg {

enum class ErrorKind {
    DanglingState,   // a state without outgoing edges
    BadEdge,         // an edge referencing an unknown state
    BadObjective,    // malformed objective (e.g. D does not divide W)
    BadReward,       // reward inconsistent with the operation's contract
    BadLasso,        // lasso not a path of the game
    SchemeInvalid,   // reachable constrained pair with no admissible move
    NotWinning,      // strategy extraction requested from a losing state
    TooLarge,        // an enforced resource cap was exceeded
    BadFormula,      // CNF/QBF violating a generator precondition
    BadSchedule,     // phase schedule violating its growth conditions
    BadInput,        // unparsable or inconsistent input file
    NotDistribution,     // frequency entries negative or not summing to one
    FlowViolation,       // inflow != outflow at some state
    SupportNotScc,       // frequency support violates the connectedness rule
    NotEulerian,         // no Euler circuit despite flow invariants (internal)
    NotAssignmentPath,   // window path not an assignment path (generator bug)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace sg
