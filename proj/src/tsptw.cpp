#include "nrpa/tsptw.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace nrpa::tsptw {

TsptwInstance::TsptwInstance(std::vector<std::vector<double>> cost, std::vector<Window> windows)
    : cost_(std::move(cost)), windows_(std::move(windows)) {
    const std::size_t n = windows_.size();
    if (n == 0) throw Error("instance needs a depot");
    if (cost_.size() != n) throw Error("cost matrix size does not match node count");
    for (std::size_t a = 0; a < n; ++a) {
        if (cost_[a].size() != n) throw Error("cost matrix is not square");
        for (std::size_t b = 0; b < n; ++b) {
            const double c = cost_[a][b];
            if (!std::isfinite(c) || c < 0.0) throw Error("travel costs must be finite and >= 0");
            if (a == b && c != 0.0) throw Error("cost matrix diagonal must be zero");
            maxEdge_ = std::max(maxEdge_, c);
        }
    }
    for (const auto& w : windows_) {
        if (w.earliest < 0.0 || w.latest < 0.0) throw Error("negative time window");
        if (w.latest < w.earliest) throw Error("time window closes before it opens");
    }
}

TsptwInstance TsptwInstance::fromCoordinates(const std::vector<std::pair<double, double>>& xy,
                                             std::vector<Window> windows,
                                             const std::vector<double>& service) {
    const std::size_t n = xy.size();
    if (!service.empty() && service.size() != n) throw Error("service times do not match node count");
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            cost[a][b] = std::hypot(xy[a].first - xy[b].first, xy[a].second - xy[b].second);
            if (!service.empty()) cost[a][b] += service[a];
        }
    return TsptwInstance(std::move(cost), std::move(windows));
}

double TsptwInstance::worstScore() const noexcept {
    const double n = nodes();
    return -(kViolationPenalty * n + maxEdge_ * n);
}

namespace {

std::vector<double> parseNumbers(const std::string& line, std::size_t lineNo, bool& numeric) {
    std::istringstream ss(line);
    std::vector<double> out;
    std::string tok;
    numeric = true;
    while (ss >> tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) {
            if (out.empty()) {
                numeric = false;  // header line
                return {};
            }
            throw Error("malformed field '" + tok + "' on line " + std::to_string(lineNo));
        }
        out.push_back(v);
    }
    return out;
}

bool isIntegral(double v) { return std::floor(v) == v && v >= 0.0; }

} // namespace

TsptwInstance parseInstance(std::istream& in) {
    std::vector<std::pair<std::size_t, std::vector<double>>> rows;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#' || line.compare(first, 2, "!!") == 0) continue;
        bool numeric = false;
        auto nums = parseNumbers(line, lineNo, numeric);
        if (!numeric) continue;  // header text
        rows.emplace_back(lineNo, std::move(nums));
    }
    if (rows.empty()) throw Error("instance has no node rows");

    std::vector<std::pair<double, double>> xy;
    std::vector<Window> windows;
    std::vector<double> service;
    std::set<double> ids;

    auto addNode = [&](std::size_t ln, double id, double x, double y, double e, double l, double s) {
        if (!isIntegral(id)) throw Error("bad node id on line " + std::to_string(ln));
        if (!ids.insert(id).second) throw Error("duplicate node id on line " + std::to_string(ln));
        if (e < 0.0 || l < 0.0) throw Error("negative time window on line " + std::to_string(ln));
        if (l < e) throw Error("window closes before it opens on line " + std::to_string(ln));
        xy.emplace_back(x, y);
        windows.push_back({e, l});
        service.push_back(s);
    };

    if (rows.front().second.size() == 1) {
        // Minimal layout.
        const double count = rows.front().second[0];
        if (!isIntegral(count) || count < 1) throw Error("bad node count on line " + std::to_string(rows.front().first));
        if (rows.size() - 1 != static_cast<std::size_t>(count))
            throw Error("node count header says " + std::to_string(static_cast<long>(count)) + " but found " +
                        std::to_string(rows.size() - 1) + " node rows");
        std::vector<std::pair<std::size_t, std::vector<double>>> nodes(rows.begin() + 1, rows.end());
        for (const auto& [ln, f] : nodes)
            if (f.size() != 5) throw Error("expected `id x y ready due` on line " + std::to_string(ln));
        std::stable_sort(nodes.begin(), nodes.end(),
                         [](const auto& a, const auto& b) { return a.second[0] < b.second[0]; });
        for (const auto& [ln, f] : nodes) addNode(ln, f[0], f[1], f[2], f[3], f[4], 0.0);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].second[0] != static_cast<double>(i))
                throw Error("node ids must be 0..count-1");
    } else {
        // Solomon-style layout; rows ahead of the customer table (vehicle
        // count and capacity) are skipped.
        auto it = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.second.size() == 7; });
        if (it == rows.end()) throw Error("no `id x y demand ready due service` rows found");
        for (; it != rows.end(); ++it) {
            const auto& [ln, f] = *it;
            if (f.size() != 7)
                throw Error("expected `id x y demand ready due service` on line " + std::to_string(ln));
            if (f[0] == 999.0) break;
            addNode(ln, f[0], f[1], f[2], f[4], f[5], f[6]);
        }
    }
    return TsptwInstance::fromCoordinates(xy, std::move(windows), service);
}

TsptwInstance parseInstance(const std::string& text) {
    std::istringstream in(text);
    return parseInstance(in);
}

TsptwInstance loadInstance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file '" + path + "'");
    return parseInstance(in);
}

TourState startTour(const TsptwInstance& inst) {
    TourState s;
    s.seen.assign(static_cast<std::size_t>(inst.nodes()), false);
    s.seen[0] = true;
    s.currentTime = std::max(0.0, inst.window(0).earliest);
    return s;
}

void advanceInPlace(const TsptwInstance& inst, TourState& s, int next) {
    if (s.closed) throw Error("tour already closed");
    if (next <= 0 || next >= inst.nodes()) throw Error("node out of range");
    if (s.seen[next]) throw Error("node already visited");
    const double c = inst.cost(s.current(), next);
    const double arrival = s.currentTime + c;
    const Window& w = inst.window(next);
    if (arrival > w.latest) ++s.violations;
    s.currentTime = std::max(arrival, w.earliest);
    s.accumulatedCost += c;
    s.visited.push_back(next);
    s.seen[next] = true;
}

TourState advance(const TsptwInstance& inst, TourState state, int next) {
    advanceInPlace(inst, state, next);
    return state;
}

void closeTour(const TsptwInstance& inst, TourState& s) {
    if (s.closed) throw Error("tour already closed");
    if (static_cast<int>(s.visited.size()) != inst.nodes()) throw Error("tour is incomplete");
    const double c = inst.cost(s.current(), 0);
    const double arrival = s.currentTime + c;
    if (arrival > inst.window(0).latest) ++s.violations;
    s.currentTime = std::max(arrival, inst.window(0).earliest);
    s.accumulatedCost += c;
    s.closed = true;
}

double terminalScore(const TourState& s) {
    if (!s.closed) throw Error("score requested for an incomplete tour");
    return -(s.accumulatedCost + kViolationPenalty * s.violations);
}

TourState TsptwProblem::root() const {
    TourState s = startTour(inst_);
    if (inst_.customers() == 0) closeTour(inst_, s);
    return s;
}

void TsptwProblem::legalMoves(const State& s, std::vector<Move>& out) const {
    if (s.closed) return;
    const auto nodes = static_cast<MoveCode>(inst_.nodes());
    const auto cur = static_cast<MoveCode>(s.current());
    for (int i = 1; i < inst_.nodes(); ++i)
        if (!s.seen[i]) out.push_back({i, cur * nodes + static_cast<MoveCode>(i)});
}

void TsptwProblem::apply(State& s, const Move& m) const {
    advanceInPlace(inst_, s, m.next);
    if (static_cast<int>(s.visited.size()) == inst_.nodes()) closeTour(inst_, s);
}

BruteForceResult bruteForceBest(const TsptwInstance& inst) {
    const int n = inst.customers();
    if (n > 8) throw Error("brute force limited to 8 customers");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    BruteForceResult best{-std::numeric_limits<double>::infinity(), {}};
    do {
        // Straight evaluation of the tour cost and window count.
        double time = std::max(0.0, inst.window(0).earliest);
        double cost = 0.0;
        int omega = 0;
        int prev = 0;
        for (std::size_t k = 0; k <= order.size(); ++k) {
            const int node = k < order.size() ? order[k] : 0;
            const double arrive = time + inst.cost(prev, node);
            cost += inst.cost(prev, node);
            if (arrive > inst.window(node).latest) ++omega;
            time = std::max(arrive, inst.window(node).earliest);
            prev = node;
        }
        const double score = -(cost + kViolationPenalty * omega);
        if (score > best.score) best = {score, order};
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace nrpa::tsptw
