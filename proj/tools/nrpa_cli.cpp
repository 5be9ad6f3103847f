// Command-line front end: single searches, the anytime benchmark protocol
// and independent verification of saved solutions.

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nrpa/bench.hpp"

using namespace nrpa;
using namespace nrpa::bench;

namespace {

struct CommonOptions {
    std::string problem = "maximum";
    std::string instance;
    int budget = 100;
    bool noTabu = false;
    bool allowPairs = false;

    enum class Filters { Solve, Bench, None };

    // The bench preset lets dominant-colour pairs through; solve does not.
    // verify replays under the plain game rules, so it takes no filter flags.
    void attach(CLI::App* app, Filters filters) {
        app->add_option("--problem", problem, "maximum | tsptw | samegame")
            ->check(CLI::IsMember({"maximum", "tsptw", "samegame"}))
            ->required();
        app->add_option("--instance", instance, "instance file (tsptw, samegame)");
        app->add_option("--budget", budget, "atom budget (maximum)")->check(CLI::PositiveNumber);
        if (filters == Filters::None) {
            noTabu = true;
            return;
        }
        app->add_flag("--no-tabu", noTabu, "samegame: disable the tabu-colour playout filter");
        if (filters == Filters::Solve) {
            app->add_flag("--allow-pairs", allowPairs, "samegame: let dominant-colour pairs through the filter");
        } else {
            allowPairs = true;
            app->add_flag("--no-pairs", [this](std::int64_t) { allowPairs = false; },
                          "samegame: filter dominant-colour pairs too");
        }
    }

    ProblemSpec spec() const {
        ProblemSpec s;
        s.kind = parseProblemKind(problem);
        s.instancePath = instance;
        s.budget = budget;
        s.samegame.tabu = !noTabu;
        s.samegame.allowPairs = allowPairs;
        if (s.kind != ProblemKind::Maximum && instance.empty())
            throw Error("--instance is required for " + problem);
        return s;
    }
};

struct SearchOptions {
    int level = 4;
    int iterations = 100;
    double alpha = 1.0;
    std::uint64_t seed = 0;

    void attach(CLI::App* app) {
        app->add_option("--level", level, "nesting level")->check(CLI::NonNegativeNumber);
        app->add_option("--N", iterations, "iterations per adaptive level")->check(CLI::PositiveNumber);
        app->add_option("--alpha", alpha, "adaptation step")->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "random seed (bench: first seed)");
    }

    SearchConfig config() const {
        SearchConfig c;
        c.level = level;
        c.iterations = iterations;
        c.alpha = alpha;
        c.seed = seed;
        return c;
    }
};

int runSolve(const CommonOptions& common, const SearchOptions& so, const std::string& algo, int p,
             std::optional<double> timeLimit, unsigned workers, const std::string& out) {
    const auto problem = loadProblem(common.spec());
    SearchConfig cfg = so.config();
    cfg.evalWorkers = workers;
    if (timeLimit) cfg.deadline = std::chrono::duration<double>(*timeLimit);
    const Variant variant{algo == "nrpa" ? Algorithm::Nrpa : Algorithm::Stabilized, p};
    cfg.validate();

    const auto result = runOnce(problem, variant, cfg, so.seed);
    const auto& best = result.trace.best;
    std::cout << std::setprecision(12) << "variant   " << variant.name() << '\n'
              << "score     " << best.score << '\n'
              << "playouts  " << result.stats.playouts << '\n'
              << "adapts    " << result.stats.adapts << '\n'
              << "solution  " << problem.describe(best) << '\n'
              << "sequence ";
    for (auto m : best.moves) std::cout << ' ' << m;
    std::cout << '\n';
    if (!out.empty()) {
        writeSolution({problemName(problem.kind()), problem.instanceHash(), best}, out);
        std::cout << "wrote " << out << '\n';
    }
    return 0;
}

int runBenchCommand(const CommonOptions& common, const SearchOptions& so, const std::string& algo,
                    std::vector<int> ps, int runs, double timeLimit, double start, unsigned workers,
                    const std::string& out, const std::string& bestOut) {
    BenchConfig cfg;
    cfg.problem = common.spec();
    cfg.search = so.config();
    cfg.runs = runs;
    cfg.seedBase = so.seed;
    cfg.workers = workers;
    cfg.checkpoints = geometricCheckpoints(start, 2.0, timeLimit);
    if (algo == "nrpa" || algo == "both") cfg.variants.push_back({Algorithm::Nrpa, 1});
    if (algo == "snrpa" || algo == "both")
        for (int p : ps) cfg.variants.push_back({Algorithm::Stabilized, p});

    const auto problem = loadProblem(cfg.problem);
    const auto report = runBench(cfg, problem);
    if (out.empty())
        writeCsv(report.table, std::cout);
    else
        emitCsv(report.table, out);
    if (!bestOut.empty()) {
        writeSolution({problemName(problem.kind()), problem.instanceHash(), report.best}, bestOut);
        std::cerr << "best " << report.best.score << " (" << report.bestVariant << ") written to " << bestOut << '\n';
    }
    return 0;
}

int runVerify(const CommonOptions& common, const std::string& path) {
    const auto problem = loadProblem(common.spec());
    const auto sol = readSolution(path);
    if (sol.problem != problemName(problem.kind())) throw Error("solution is for problem '" + sol.problem + "'");
    if (sol.instanceHash != problem.instanceHash()) throw Error("solution was produced on a different instance");
    if (!problem.verify(sol.sequence)) {
        std::cout << "INVALID: sequence does not replay to score " << sol.sequence.score << '\n';
        return 1;
    }
    std::cout << "OK score " << sol.sequence.score << " | " << problem.describe(sol.sequence) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nested rollout policy adaptation solver and benchmark"};
    app.require_subcommand(1);

    CommonOptions solveCommon, benchCommon, verifyCommon;
    SearchOptions solveSearch, benchSearch;

    auto* solve = app.add_subcommand("solve", "run one search and print the best solution");
    solveCommon.attach(solve, CommonOptions::Filters::Solve);
    solveSearch.attach(solve);
    std::string solveAlgo = "nrpa";
    int solveP = 4;
    std::optional<double> solveLimit;
    unsigned solveWorkers = 1;
    std::string solveOut;
    solve->add_option("--algo", solveAlgo, "nrpa | snrpa")->check(CLI::IsMember({"nrpa", "snrpa"}));
    solve->add_option("--P", solveP, "evaluation playouts for snrpa")->check(CLI::PositiveNumber);
    solve->add_option("--time-limit", solveLimit, "wall-clock deadline in seconds")->check(CLI::NonNegativeNumber);
    solve->add_option("--workers", solveWorkers, "threads for the evaluation playouts")->check(CLI::PositiveNumber);
    solve->add_option("--out", solveOut, "write the best solution to this file");

    auto* bench = app.add_subcommand("bench", "anytime benchmark: mean best score per checkpoint as CSV");
    benchCommon.attach(bench, CommonOptions::Filters::Bench);
    benchSearch.attach(bench);
    std::string benchAlgo = "both";
    std::vector<int> benchP{4};
    int benchRuns = 50;
    double benchLimit = 10.24;
    double benchStart = 0.01;
    unsigned benchWorkers = 1;
    std::string benchOut, benchBest;
    bench->add_option("--algo", benchAlgo, "nrpa | snrpa | both")->check(CLI::IsMember({"nrpa", "snrpa", "both"}));
    bench->add_option("--P", benchP, "comma-separated P values for snrpa")->delimiter(',');
    bench->add_option("--runs", benchRuns, "runs per variant")->check(CLI::PositiveNumber);
    bench->add_option("--time-limit", benchLimit, "last checkpoint and per-run deadline (s)")->check(CLI::PositiveNumber);
    bench->add_option("--first-checkpoint", benchStart, "first checkpoint (s); doubles up to the time limit")
        ->check(CLI::PositiveNumber);
    bench->add_option("--workers", benchWorkers, "concurrent runs")->check(CLI::PositiveNumber);
    bench->add_option("--out", benchOut, "CSV path (stdout when omitted)");
    bench->add_option("--best-out", benchBest, "write the best solution over all runs to this file");

    auto* verify = app.add_subcommand("verify", "replay a saved solution against its instance");
    verifyCommon.attach(verify, CommonOptions::Filters::None);
    std::string verifyPath;
    verify->add_option("--solution", verifyPath, "solution file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*solve)
            return runSolve(solveCommon, solveSearch, solveAlgo, solveP, solveLimit, solveWorkers, solveOut);
        if (*bench)
            return runBenchCommand(benchCommon, benchSearch, benchAlgo, benchP, benchRuns, benchLimit, benchStart,
                                   benchWorkers, benchOut, benchBest);
        if (*verify) return runVerify(verifyCommon, verifyPath);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
