#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nrpa/common.hpp"

namespace nrpa::maximum {

/// Expression atoms. Operators are binary; One is the leaf 1.0.
enum class Atom : std::uint8_t { Plus = 0, Times = 1, One = 2 };

inline constexpr int kAtomKinds = 3;

struct ExprState {
    std::vector<Atom> prefix;  // atoms placed so far, in prefix order
    int openSlots = 1;         // unfilled child positions; 0 once complete

    int atomsUsed() const noexcept { return static_cast<int>(prefix.size()); }
};

struct AtomMove {
    Atom atom;
    MoveCode code;
};

/// Build an expression over {+, *, 1.0} with at most `budget` atoms; the
/// score is its value. Atoms are pushed in prefix order, each one filling
/// the leftmost open slot. A move is coded by the atom position and kind so
/// the policy can learn position-dependent preferences.
class MaximumProblem {
public:
    using State = ExprState;
    using Move = AtomMove;

    explicit MaximumProblem(int budget);

    int budget() const noexcept { return budget_; }

    State root() const { return {}; }
    bool isTerminal(const State& s) const noexcept { return s.openSlots == 0; }
    void legalMoves(const State& s, std::vector<Move>& out) const;
    static MoveCode code(const Move& m) noexcept { return m.code; }
    void apply(State& s, const Move& m) const;
    double score(const State& s) const { return evaluateExpression(s); }

    /// Value of a completed expression.
    static double evaluateExpression(const State& s);

private:
    int budget_;
};

/// Legal atoms at a non-terminal state; throws on terminal states.
std::vector<AtomMove> legalAtoms(const ExprState& state, int budget);

/// Exact optimum over every expression of at most `budget` atoms, found by
/// enumerating all binary trees. Limited to budget <= 13.
double bruteForceMax(int budget);

/// Infix rendering, e.g. "((1+1)*(1+1))".
std::string toInfix(const ExprState& state);

} // namespace nrpa::maximum
