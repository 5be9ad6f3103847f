#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nrpa/maximum.hpp"
#include "nrpa/samegame.hpp"
#include "nrpa/search.hpp"
#include "nrpa/tsptw.hpp"

namespace nrpa::bench {

enum class ProblemKind { Maximum, Tsptw, SameGame };

ProblemKind parseProblemKind(const std::string& name);
std::string problemName(ProblemKind kind);

/// One column of a benchmark table: NRPA, or the stabilized variant with P
/// evaluation playouts.
struct Variant {
    Algorithm algo = Algorithm::Nrpa;
    int evalPlayouts = 1;

    std::string name() const;  // "nrpa" or "snrpa(P)"
    friend bool operator==(const Variant&, const Variant&) = default;
};

/// NRPA first, then stabilized variants by ascending P; duplicates dropped.
std::vector<Variant> orderVariants(std::vector<Variant> variants);

/// start, start*ratio, ... up to and including `end` (within rounding).
std::vector<double> geometricCheckpoints(double start, double ratio, double end);

/// A ready-to-search problem plus what the harness needs around it.
class LoadedProblem {
public:
    using Any = std::variant<maximum::MaximumProblem, tsptw::TsptwProblem, samegame::SameGameProblem>;

    LoadedProblem(ProblemKind kind, Any problem, std::string instanceHash);

    ProblemKind kind() const noexcept { return kind_; }
    const Any& problem() const noexcept { return problem_; }
    const std::string& instanceHash() const noexcept { return hash_; }

    /// Score credited to a run that has not finished a playout yet.
    double sentinel() const;

    /// True when `seq` replays legally to a terminal state with its score.
    bool verify(const MoveSequence& seq) const;

    /// Human-readable rendering of a solution (expression, tour or group list).
    std::string describe(const MoveSequence& seq) const;

private:
    ProblemKind kind_;
    Any problem_;
    std::string hash_;
};

struct ProblemSpec {
    ProblemKind kind = ProblemKind::Maximum;
    std::string instancePath;  // TSPTW and SameGame
    int budget = 100;          // Maximum
    samegame::SameGameOptions samegame{};
};

/// Loads the instance named by `spec`. Throws nrpa::Error on any failure.
LoadedProblem loadProblem(const ProblemSpec& spec);

/// 16 hex digits of FNV-1a over the given bytes.
std::string hashBytes(const std::string& bytes);

struct RunResult {
    RunTrace trace;
    SearchStats stats;
};

/// One anytime search of `variant` with `search` settings and `seed`.
RunResult runOnce(const LoadedProblem& problem, const Variant& variant, SearchConfig search, std::uint64_t seed);

/// Runs seeds seedBase .. seedBase + runs - 1 on `workers` threads. The
/// result vector is ordered by seed, whatever the worker count.
std::vector<RunResult> runMany(const LoadedProblem& problem, const Variant& variant, const SearchConfig& search,
                               int runs, std::uint64_t seedBase, unsigned workers);

/// Mean over traces of the best score reached by each checkpoint.
std::vector<double> aggregate(const std::vector<RunTrace>& traces, const std::vector<double>& checkpoints,
                              double sentinel);

struct Table {
    std::vector<double> times;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values;  // values[column][row]

    friend bool operator==(const Table&, const Table&) = default;
};

/// `time,<columns...>` header, then one row per checkpoint.
void writeCsv(const Table& table, std::ostream& out);
void emitCsv(const Table& table, const std::string& path);
Table parseCsv(std::istream& in);
Table loadCsv(const std::string& path);

struct BenchConfig {
    ProblemSpec problem;
    std::vector<Variant> variants;
    SearchConfig search;  // level, iterations, alpha; seed and deadline are set per run
    int runs = 50;
    std::uint64_t seedBase = 0;
    std::vector<double> checkpoints = geometricCheckpoints(0.01, 2.0, 10.24);
    unsigned workers = 1;

    void validate() const;
};

struct BenchReport {
    Table table;
    std::vector<std::vector<RunResult>> runs;  // per variant, in table column order
    MoveSequence best;                         // best final sequence over every run
    std::string bestVariant;
};

/// Full protocol: every variant runs `runs` seeds with the last checkpoint
/// as deadline, then traces are sampled at each checkpoint.
BenchReport runBench(const BenchConfig& config, const LoadedProblem& problem);

/// Replayable solution file: problem name, instance hash, score, move codes.
struct SolutionFile {
    std::string problem;
    std::string instanceHash;
    MoveSequence sequence;
};

void writeSolution(const SolutionFile& solution, const std::string& path);
SolutionFile readSolution(const std::string& path);
void writeSolution(const SolutionFile& solution, std::ostream& out);
SolutionFile readSolution(std::istream& in);

} // namespace nrpa::bench
