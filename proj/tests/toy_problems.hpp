#pragma once

#include <vector>

#include "nrpa/common.hpp"

namespace nrpa::testing {

/// One decision among `moves` codes, then terminal. Score is the chosen index.
class OneStepProblem {
public:
    struct State {
        int chosen = -1;
    };
    struct Move {
        int index;
        MoveCode code;
    };

    explicit OneStepProblem(std::vector<MoveCode> codes) : codes_(std::move(codes)) {}

    State root() const { return {}; }
    bool isTerminal(const State& s) const { return s.chosen >= 0 || codes_.empty(); }
    void legalMoves(const State& s, std::vector<Move>& out) const {
        if (s.chosen >= 0) return;
        for (std::size_t i = 0; i < codes_.size(); ++i) out.push_back({static_cast<int>(i), codes_[i]});
    }
    static MoveCode code(const Move& m) { return m.code; }
    void apply(State& s, const Move& m) const { s.chosen = m.index; }
    double score(const State& s) const { return s.chosen; }

private:
    std::vector<MoveCode> codes_;
};

/// A non-terminal root that offers no moves; violates the problem contract.
struct StuckProblem {
    struct State {};
    struct Move {
        MoveCode code;
    };
    State root() const { return {}; }
    bool isTerminal(const State&) const { return false; }
    void legalMoves(const State&, std::vector<Move>&) const {}
    static MoveCode code(const Move& m) { return m.code; }
    void apply(State&, const Move&) const {}
    double score(const State&) const { return 0.0; }
};

} // namespace nrpa::testing
