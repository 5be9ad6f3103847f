#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "nrpa/common.hpp"

namespace nrpa::tsptw {

/// Penalty per violated time window.
inline constexpr double kViolationPenalty = 1e6;

struct Window {
    double earliest = 0.0;
    double latest = 0.0;
};

/// Depot is node 0, customers are 1..customers(). Immutable after construction.
class TsptwInstance {
public:
    TsptwInstance(std::vector<std::vector<double>> cost, std::vector<Window> windows);

    /// Euclidean instance; `service[i]` is added to every edge leaving i.
    static TsptwInstance fromCoordinates(const std::vector<std::pair<double, double>>& xy,
                                         std::vector<Window> windows,
                                         const std::vector<double>& service = {});

    int customers() const noexcept { return static_cast<int>(windows_.size()) - 1; }
    int nodes() const noexcept { return static_cast<int>(windows_.size()); }
    double cost(int a, int b) const { return cost_[a][b]; }
    const Window& window(int i) const { return windows_[i]; }
    double maxEdge() const noexcept { return maxEdge_; }

    /// A score no tour can fall below; used where "no result yet" needs a number.
    double worstScore() const noexcept;

private:
    std::vector<std::vector<double>> cost_;
    std::vector<Window> windows_;
    double maxEdge_ = 0.0;
};

/// Reads either layout:
///
/// Solomon-style (benchmark files): optional "!!" / header lines, then rows
///   `id x y demand ready due service`, the first row being the depot and an
///   id of 999 ending the list. Demand is ignored; service time is added to
///   the edges leaving the node.
///
/// Minimal: first line is the node count including the depot, then one row
///   per node `id x y ready due`, ids 0..count-1, depot first.
///
/// Lines starting with '#' are comments in both layouts.
TsptwInstance parseInstance(std::istream& in);
TsptwInstance parseInstance(const std::string& text);
TsptwInstance loadInstance(const std::string& path);

struct TourState {
    std::vector<int> visited{0};
    std::vector<bool> seen;       // seen[i] once node i is on the tour
    double currentTime = 0.0;     // departure time from the last node
    int violations = 0;
    double accumulatedCost = 0.0;
    bool closed = false;          // closing depot leg applied

    int current() const noexcept { return visited.back(); }
};

/// Root state at the depot, departing at max(0, e_0).
TourState startTour(const TsptwInstance& inst);

/// Travels to `next`; arrival after l_next counts a violation, early arrival
/// waits until e_next. Throws when `next` is already on the tour.
TourState advance(const TsptwInstance& inst, TourState state, int next);
void advanceInPlace(const TsptwInstance& inst, TourState& state, int next);

/// Applies the return leg to the depot, checked against the depot window.
void closeTour(const TsptwInstance& inst, TourState& state);

/// -(cost + 1e6 * violations) of a closed tour.
double terminalScore(const TourState& state);

struct NodeMove {
    int next;
    MoveCode code;
};

/// Tours built customer by customer from the depot. Every unvisited customer
/// is legal; the return leg is applied with the last customer. A move is
/// coded by its edge, current * nodes + next.
class TsptwProblem {
public:
    using State = TourState;
    using Move = NodeMove;

    explicit TsptwProblem(TsptwInstance inst) : inst_(std::move(inst)) {}

    const TsptwInstance& instance() const noexcept { return inst_; }

    State root() const;
    bool isTerminal(const State& s) const noexcept { return s.closed; }
    void legalMoves(const State& s, std::vector<Move>& out) const;
    static MoveCode code(const Move& m) noexcept { return m.code; }
    void apply(State& s, const Move& m) const;
    double score(const State& s) const { return terminalScore(s); }

private:
    TsptwInstance inst_;
};

struct BruteForceResult {
    double score;
    std::vector<int> order;  // customers in visiting order
};

/// Exact optimum over all visiting orders. Limited to 8 customers.
BruteForceResult bruteForceBest(const TsptwInstance& inst);

} // namespace nrpa::tsptw
