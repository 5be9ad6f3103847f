#include "nrpa/maximum.hpp"

#include <algorithm>
#include <functional>

namespace nrpa::maximum {

namespace {

MoveCode atomCode(int position, Atom atom) {
    return static_cast<MoveCode>(position) * kAtomKinds + static_cast<MoveCode>(atom);
}

bool isOperator(Atom a) { return a != Atom::One; }

} // namespace

MaximumProblem::MaximumProblem(int budget) : budget_(budget) {
    if (budget < 1) throw Error("atom budget must be >= 1");
}

std::vector<AtomMove> legalAtoms(const ExprState& state, int budget) {
    if (state.openSlots == 0) throw Error("legal atoms requested on a complete expression");
    std::vector<AtomMove> out;
    MaximumProblem(budget).legalMoves(state, out);
    return out;
}

void MaximumProblem::legalMoves(const State& s, std::vector<Move>& out) const {
    if (s.openSlots == 0) return;
    const int pos = s.atomsUsed();
    // An operator uses one atom and opens one extra slot.
    if (s.atomsUsed() + s.openSlots + 2 <= budget_) {
        out.push_back({Atom::Plus, atomCode(pos, Atom::Plus)});
        out.push_back({Atom::Times, atomCode(pos, Atom::Times)});
    }
    out.push_back({Atom::One, atomCode(pos, Atom::One)});
}

void MaximumProblem::apply(State& s, const Move& m) const {
    if (s.openSlots == 0) throw Error("expression already complete");
    if (isOperator(m.atom) && s.atomsUsed() + s.openSlots + 2 > budget_)
        throw Error("operator exceeds atom budget");
    s.prefix.push_back(m.atom);
    s.openSlots += isOperator(m.atom) ? 1 : -1;
}

double MaximumProblem::evaluateExpression(const State& s) {
    if (s.openSlots != 0) throw Error("cannot evaluate an incomplete expression");
    // Right-to-left prefix evaluation with an operand stack.
    std::vector<double> stack;
    stack.reserve(s.prefix.size());
    for (auto it = s.prefix.rbegin(); it != s.prefix.rend(); ++it) {
        if (*it == Atom::One) {
            stack.push_back(1.0);
            continue;
        }
        const double lhs = stack.back();
        stack.pop_back();
        const double rhs = stack.back();
        stack.back() = (*it == Atom::Plus) ? lhs + rhs : lhs * rhs;
    }
    return stack.back();
}

double bruteForceMax(int budget) {
    if (budget < 1) throw Error("atom budget must be >= 1");
    if (budget > 13) throw Error("brute force limited to budget <= 13");
    // values[k] holds the value of every tree with exactly k atoms.
    std::vector<std::vector<double>> values(static_cast<std::size_t>(budget) + 1);
    values[1] = {1.0};
    for (int k = 3; k <= budget; k += 2) {
        for (int left = 1; left <= k - 2; left += 2) {
            const int right = k - 1 - left;
            for (double a : values[left])
                for (double b : values[right]) {
                    values[k].push_back(a + b);
                    values[k].push_back(a * b);
                }
        }
    }
    double best = 0.0;
    for (const auto& vs : values)
        for (double v : vs) best = std::max(best, v);
    return best;
}

std::string toInfix(const ExprState& state) {
    std::size_t pos = 0;
    std::function<std::string()> rec = [&]() -> std::string {
        if (pos >= state.prefix.size()) return "?";
        const Atom a = state.prefix[pos++];
        if (a == Atom::One) return "1";
        std::string lhs = rec();
        std::string rhs = rec();
        return "(" + lhs + (a == Atom::Plus ? "+" : "*") + rhs + ")";
    };
    return rec();
}

} // namespace nrpa::maximum
