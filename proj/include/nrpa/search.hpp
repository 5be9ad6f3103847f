#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nrpa/common.hpp"
#include "nrpa/eval_pool.hpp"
#include "nrpa/problem.hpp"
#include "nrpa/rng.hpp"
#include "nrpa/softmax.hpp"
#include "nrpa/trace.hpp"
#include "nrpa/weight_table.hpp"

namespace nrpa {

struct SearchConfig {
    int level = 4;
    int iterations = 100;   // N: iterations per adaptive level
    int evalPlayouts = 1;   // P: playouts per evaluation level (stabilized only)
    double alpha = 1.0;
    std::uint64_t seed = 0;
    std::optional<std::chrono::duration<double>> deadline;
    unsigned evalWorkers = 1;

    void validate() const {
        if (level < 0) throw Error("level must be >= 0");
        if (iterations < 1) throw Error("iterations must be >= 1");
        if (evalPlayouts < 1) throw Error("evaluation playouts must be >= 1");
        if (!(alpha > 0.0)) throw Error("alpha must be > 0");
        if (deadline && deadline->count() < 0.0) throw Error("deadline must be >= 0");
    }
};

struct SearchStats {
    std::uint64_t playouts = 0;
    std::uint64_t adapts = 0;
    std::uint64_t playoutsAfterDeadline = 0;  // playouts launched once the deadline had passed
};

enum class Algorithm { Nrpa, Stabilized };

/// Samples moves from the softmax of the policy weights until a terminal
/// state and returns the move codes with the terminal score.
template <SearchProblem P>
MoveSequence playout(const P& problem, const WeightTable& policy, RngStream& rng) {
    MoveSequence seq;
    auto state = problem.root();
    std::vector<typename P::Move> moves;
    std::vector<double> weights;
    std::vector<double> exps;
    while (!problem.isTerminal(state)) {
        moves.clear();
        problem.legalMoves(state, moves);
        if (moves.empty()) throw Error("stuck state: non-terminal state without legal moves");
#ifndef NDEBUG
        checkDistinctCodes<P>(moves);
#endif
        weights.resize(moves.size());
        exps.resize(moves.size());
        for (std::size_t i = 0; i < moves.size(); ++i) weights[i] = policy.get(P::code(moves[i]));
        const double z = shiftedExponentials(weights, exps);

        const double u = rng.uniform() * z;
        std::size_t pick = moves.size() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < moves.size(); ++i) {
            acc += exps[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        seq.moves.push_back(P::code(moves[pick]));
        problem.apply(state, moves[pick]);
    }
    seq.score = problem.score(state);
    return seq;
}

/// In-place form of adapt(). Every decrement is computed from the weights the
/// table held on entry, so the result equals adapting a copy.
template <SearchProblem P>
void adaptInPlace(WeightTable& policy, std::span<const MoveCode> sequence, const P& problem,
                  double alpha) {
    std::vector<std::pair<MoveCode, double>> deltas;
    std::vector<typename P::Move> moves;
    std::vector<double> weights;
    std::vector<double> exps;
    auto state = problem.root();
    for (std::size_t step = 0; step < sequence.size(); ++step) {
        moves.clear();
        if (!problem.isTerminal(state)) problem.legalMoves(state, moves);
        const auto played = findByCode<P>(moves, sequence[step]);
        if (played == moves.size()) throw ReplayError(step, "sequence/root mismatch");

        deltas.emplace_back(sequence[step], alpha);
        weights.resize(moves.size());
        exps.resize(moves.size());
        for (std::size_t i = 0; i < moves.size(); ++i) weights[i] = policy.get(P::code(moves[i]));
        const double z = shiftedExponentials(weights, exps);
        for (std::size_t i = 0; i < moves.size(); ++i)
            deltas.emplace_back(P::code(moves[i]), -alpha * exps[i] / z);

        problem.apply(state, moves[played]);
    }
    for (const auto& [code, delta] : deltas) policy.add(code, delta);
}

/// Returns the policy moved toward `sequence`: +alpha on each played code,
/// then -alpha times the softmax probability (under the input policy) on
/// every legal code of the state it was played from.
template <SearchProblem P>
WeightTable adapt(const WeightTable& policy, std::span<const MoveCode> sequence, const P& problem,
                  double alpha) {
    WeightTable out = policy;
    adaptInPlace(out, sequence, problem, alpha);
    return out;
}

/// Nested rollout policy adaptation and its stabilized variant over one
/// problem. One instance drives one run: it owns the clock, the counters and
/// the trace of global-best improvements.
template <SearchProblem P>
class NestedSearch {
public:
    using Clock = std::chrono::steady_clock;

    NestedSearch(const P& problem, SearchConfig config)
        : problem_(problem), config_(std::move(config)), start_(Clock::now()) {
        config_.validate();
        if (config_.evalWorkers > 1) pool_ = std::make_unique<EvalPool>(config_.evalWorkers);
    }

    /// Plain NRPA: level 0 is a playout, every level above adapts.
    MoveSequence nrpa(int level, const WeightTable& policy, RngStream& rng) {
        if (level < 0) throw Error("level must be >= 0");
        if (level == 0) return levelZero(policy, rng);
        return adaptiveLevel(Algorithm::Nrpa, level, policy, rng);
    }

    /// Stabilized NRPA: level 1 becomes an evaluation level that returns the
    /// best of P playouts under one frozen policy and never adapts.
    MoveSequence snrpa(int level, const WeightTable& policy, RngStream& rng) {
        if (level < 0) throw Error("level must be >= 0");
        if (level == 0) return levelZero(policy, rng);
        if (level == 1) return evaluationLevel(policy, rng);
        return adaptiveLevel(Algorithm::Stabilized, level, policy, rng);
    }

    MoveSequence search(Algorithm algo, int level, const WeightTable& policy, RngStream& rng) {
        return algo == Algorithm::Nrpa ? nrpa(level, policy, rng) : snrpa(level, policy, rng);
    }

    /// Runs config.level from an all-zero policy with a stream seeded from
    /// config.seed and stores the result in the trace.
    MoveSequence run(Algorithm algo) {
        RngStream rng(config_.seed);
        trace_.best = search(algo, config_.level, WeightTable{}, rng);
        return trace_.best;
    }

    const RunTrace& trace() const noexcept { return trace_; }
    const SearchStats& stats() const noexcept { return stats_; }
    const SearchConfig& config() const noexcept { return config_; }

    /// Called after each iteration of an adaptive level with the level's
    /// best score so far.
    using IterationObserver = std::function<void(int level, int iteration, double best)>;
    void setIterationObserver(IterationObserver observer) { observer_ = std::move(observer); }

    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    bool expired() const {
        return config_.deadline && Clock::now() - start_ >= *config_.deadline;
    }

private:
    MoveSequence levelZero(const WeightTable& policy, RngStream& rng) {
        if (expired()) ++stats_.playoutsAfterDeadline;
        RngStream stream = rng.split();
        MoveSequence seq = playout(problem_, policy, stream);
        recordPlayout(seq);
        return seq;
    }

    MoveSequence evaluationLevel(const WeightTable& policy, RngStream& rng) {
        const auto count = static_cast<std::size_t>(config_.evalPlayouts);
        std::vector<RngStream> streams;
        streams.reserve(count);
        for (std::size_t i = 0; i < count; ++i) streams.push_back(rng.split());

        std::vector<MoveSequence> results(count);
        std::size_t completed = 0;
        if (pool_ && count > 1) {
            if (expired()) ++stats_.playoutsAfterDeadline;
            pool_->run(count, [&](std::size_t i) { results[i] = playout(problem_, policy, streams[i]); });
            completed = count;
        } else {
            for (std::size_t i = 0; i < count; ++i) {
                if (expired()) ++stats_.playoutsAfterDeadline;
                results[i] = playout(problem_, policy, streams[i]);
                ++completed;
                if (expired()) break;
            }
        }

        // Fold in stream order so the answer does not depend on scheduling.
        std::size_t bestIdx = 0;
        for (std::size_t i = 0; i < completed; ++i) {
            recordPlayout(results[i]);
            if (results[i].score >= results[bestIdx].score) bestIdx = i;
        }
        return std::move(results[bestIdx]);
    }

    MoveSequence adaptiveLevel(Algorithm algo, int level, const WeightTable& incoming, RngStream& rng) {
        WeightTable policy = incoming;
        MoveSequence best;
        best.score = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < config_.iterations; ++i) {
            if (i > 0 && expired()) break;  // the adapt below may have crossed the deadline
            MoveSequence result = search(algo, level - 1, policy, rng);
            if (result.score >= best.score) best = std::move(result);
            if (observer_) observer_(level, i, best.score);
            if (expired()) break;
            adaptInPlace(policy, std::span<const MoveCode>(best.moves), problem_, config_.alpha);
            ++stats_.adapts;
        }
        return best;
    }

    void recordPlayout(const MoveSequence& seq) {
        ++stats_.playouts;
        if (trace_.events.empty() || seq.score > trace_.events.back().score)
            trace_.events.push_back({elapsed(), stats_.playouts, seq.score});
    }

    const P& problem_;
    SearchConfig config_;
    Clock::time_point start_;
    std::unique_ptr<EvalPool> pool_;
    SearchStats stats_;
    RunTrace trace_;
    IterationObserver observer_;
};

} // namespace nrpa
