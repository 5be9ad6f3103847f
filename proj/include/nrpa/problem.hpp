#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <utility>
#include <vector>

#include "nrpa/common.hpp"

namespace nrpa {

/// Contract every search domain implements.
///
/// States are plain values; `apply` advances a private copy in place and
/// `play` is the copying form. `legalMoves` fills a caller-owned buffer so
/// playouts do not allocate per step. Scores are maximised and only read at
/// terminal states. Within one state all legal moves carry distinct codes.
template <class P>
concept SearchProblem =
    requires(const P& p, typename P::State& s, const typename P::State& cs,
             const typename P::Move& m, std::vector<typename P::Move>& out) {
        typename P::State;
        typename P::Move;
        { p.root() } -> std::convertible_to<typename P::State>;
        { p.isTerminal(cs) } -> std::convertible_to<bool>;
        p.legalMoves(cs, out);
        { P::code(m) } -> std::convertible_to<MoveCode>;
        p.apply(s, m);
        { p.score(cs) } -> std::convertible_to<double>;
    };

template <SearchProblem P>
typename P::State play(const P& problem, typename P::State state, const typename P::Move& move) {
    problem.apply(state, move);
    return state;
}

/// Throws when two legal moves of one state share a code.
template <SearchProblem P>
void checkDistinctCodes(std::span<const typename P::Move> moves) {
    std::vector<MoveCode> codes;
    codes.reserve(moves.size());
    for (const auto& m : moves) codes.push_back(P::code(m));
    std::sort(codes.begin(), codes.end());
    if (std::adjacent_find(codes.begin(), codes.end()) != codes.end())
        throw Error("duplicate move code within a single state");
}

/// Index of the legal move carrying `code`, or moves.size() when absent.
template <SearchProblem P>
std::size_t findByCode(std::span<const typename P::Move> moves, MoveCode code) {
    for (std::size_t i = 0; i < moves.size(); ++i)
        if (P::code(moves[i]) == code) return i;
    return moves.size();
}

/// Folds play() from the root, matching each code against the legal codes
/// of the state it is applied to. Throws ReplayError with the failing index.
template <SearchProblem P>
typename P::State replay(const P& problem, std::span<const MoveCode> codes) {
    auto state = problem.root();
    std::vector<typename P::Move> moves;
    for (std::size_t step = 0; step < codes.size(); ++step) {
        if (problem.isTerminal(state)) throw ReplayError(step, "move after terminal state");
        moves.clear();
        problem.legalMoves(state, moves);
        checkDistinctCodes<P>(moves);
        const auto idx = findByCode<P>(moves, codes[step]);
        if (idx == moves.size()) throw ReplayError(step, "code is not a legal move");
        problem.apply(state, moves[idx]);
    }
    return state;
}

/// Replays `seq` and checks it ends terminal with exactly the recorded score.
template <SearchProblem P>
bool replayMatches(const P& problem, const MoveSequence& seq) {
    const auto state = replay(problem, std::span<const MoveCode>(seq.moves));
    return problem.isTerminal(state) && problem.score(state) == seq.score;
}

/// View of a problem whose root is an arbitrary reachable state. Used to
/// drive search-core operations from the middle of a game.
template <SearchProblem P>
class RootedAt {
public:
    using State = typename P::State;
    using Move = typename P::Move;

    RootedAt(const P& problem, State root) : problem_(&problem), root_(std::move(root)) {}

    State root() const { return root_; }
    bool isTerminal(const State& s) const { return problem_->isTerminal(s); }
    void legalMoves(const State& s, std::vector<Move>& out) const { problem_->legalMoves(s, out); }
    static MoveCode code(const Move& m) { return P::code(m); }
    void apply(State& s, const Move& m) const { problem_->apply(s, m); }
    double score(const State& s) const { return problem_->score(s); }

private:
    const P* problem_;
    State root_;
};

} // namespace nrpa
