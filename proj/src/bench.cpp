#include "nrpa/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace nrpa::bench {

ProblemKind parseProblemKind(const std::string& name) {
    if (name == "maximum") return ProblemKind::Maximum;
    if (name == "tsptw") return ProblemKind::Tsptw;
    if (name == "samegame") return ProblemKind::SameGame;
    throw Error("unknown problem '" + name + "' (expected maximum, tsptw or samegame)");
}

std::string problemName(ProblemKind kind) {
    switch (kind) {
    case ProblemKind::Maximum: return "maximum";
    case ProblemKind::Tsptw: return "tsptw";
    case ProblemKind::SameGame: return "samegame";
    }
    return "?";
}

std::string Variant::name() const {
    return algo == Algorithm::Nrpa ? "nrpa" : "snrpa(" + std::to_string(evalPlayouts) + ")";
}

std::vector<Variant> orderVariants(std::vector<Variant> variants) {
    auto key = [](const Variant& v) { return std::pair(v.algo == Algorithm::Nrpa ? 0 : 1, v.evalPlayouts); };
    for (auto& v : variants)
        if (v.algo == Algorithm::Nrpa) v.evalPlayouts = 1;
    std::sort(variants.begin(), variants.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    variants.erase(std::unique(variants.begin(), variants.end()), variants.end());
    return variants;
}

std::vector<double> geometricCheckpoints(double start, double ratio, double end) {
    if (!(start > 0.0) || !(ratio > 1.0) || end < start) throw Error("bad checkpoint schedule");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double t = start * std::pow(ratio, k);
        if (t > end * (1.0 + 1e-9)) break;
        out.push_back(t);
    }
    return out;
}

std::string hashBytes(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

LoadedProblem::LoadedProblem(ProblemKind kind, Any problem, std::string instanceHash)
    : kind_(kind), problem_(std::move(problem)), hash_(std::move(instanceHash)) {}

double LoadedProblem::sentinel() const {
    if (const auto* t = std::get_if<tsptw::TsptwProblem>(&problem_)) return t->instance().worstScore();
    return 0.0;
}

bool LoadedProblem::verify(const MoveSequence& seq) const {
    return std::visit(
        [&](const auto& p) {
            try {
                return replayMatches(p, seq);
            } catch (const Error&) {
                return false;
            }
        },
        problem_);
}

std::string LoadedProblem::describe(const MoveSequence& seq) const {
    std::ostringstream out;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            const auto state = replay(p, std::span<const MoveCode>(seq.moves));
            if constexpr (std::is_same_v<P, maximum::MaximumProblem>) {
                out << maximum::toInfix(state);
            } else if constexpr (std::is_same_v<P, tsptw::TsptwProblem>) {
                out << "tour";
                for (int n : state.visited) out << ' ' << n;
                out << " 0 | cost " << state.accumulatedCost << " | violations " << state.violations;
            } else {
                out << seq.moves.size() << " moves, " << state.board.tileCount() << " tiles left";
            }
        },
        problem_);
    return out.str();
}

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open instance file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string formatNumber(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parseNumber(const std::string& tok) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) throw Error("bad number '" + tok + "'");
    return v;
}

} // namespace

LoadedProblem loadProblem(const ProblemSpec& spec) {
    switch (spec.kind) {
    case ProblemKind::Maximum:
        return {spec.kind, maximum::MaximumProblem(spec.budget), hashBytes("maximum:" + std::to_string(spec.budget))};
    case ProblemKind::Tsptw: {
        const std::string text = readFile(spec.instancePath);
        return {spec.kind, tsptw::TsptwProblem(tsptw::parseInstance(text)), hashBytes(text)};
    }
    case ProblemKind::SameGame: {
        const std::string text = readFile(spec.instancePath);
        return {spec.kind, samegame::SameGameProblem(samegame::parseBoard(text), spec.samegame), hashBytes(text)};
    }
    }
    throw Error("unknown problem kind");
}

RunResult runOnce(const LoadedProblem& problem, const Variant& variant, SearchConfig search, std::uint64_t seed) {
    search.seed = seed;
    search.evalPlayouts = variant.algo == Algorithm::Nrpa ? 1 : variant.evalPlayouts;
    return std::visit(
        [&](const auto& p) {
            NestedSearch engine(p, search);
            engine.run(variant.algo);
            return RunResult{engine.trace(), engine.stats()};
        },
        problem.problem());
}

std::vector<RunResult> runMany(const LoadedProblem& problem, const Variant& variant, const SearchConfig& search,
                               int runs, std::uint64_t seedBase, unsigned workers) {
    if (runs < 1) throw Error("runs must be >= 1");
    std::vector<RunResult> out(static_cast<std::size_t>(runs));
    EvalPool pool(workers);
    pool.run(out.size(), [&](std::size_t i) { out[i] = runOnce(problem, variant, search, seedBase + i); });
    return out;
}

std::vector<double> aggregate(const std::vector<RunTrace>& traces, const std::vector<double>& checkpoints,
                              double sentinel) {
    if (traces.empty()) throw Error("cannot aggregate an empty trace list");
    std::vector<double> means;
    means.reserve(checkpoints.size());
    for (double t : checkpoints) {
        double sum = 0.0;
        for (const auto& tr : traces) sum += tr.bestAt(t, sentinel);
        means.push_back(sum / static_cast<double>(traces.size()));
    }
    return means;
}

void writeCsv(const Table& table, std::ostream& out) {
    out << "time";
    for (const auto& c : table.columns) out << ',' << c;
    out << '\n';
    for (std::size_t r = 0; r < table.times.size(); ++r) {
        out << formatNumber(table.times[r]);
        for (const auto& col : table.values) out << ',' << formatNumber(col.at(r));
        out << '\n';
    }
}

void emitCsv(const Table& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    writeCsv(table, out);
    if (!out) throw Error("failed writing '" + path + "'");
}

Table parseCsv(std::istream& in) {
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV");
    auto header = split(line);
    if (header.empty() || header[0] != "time") throw Error("CSV header must start with 'time'");
    t.columns.assign(header.begin() + 1, header.end());
    t.values.resize(t.columns.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != header.size()) throw Error("CSV row width does not match header");
        t.times.push_back(parseNumber(cells[0]));
        for (std::size_t c = 1; c < cells.size(); ++c) t.values[c - 1].push_back(parseNumber(cells[c]));
    }
    return t;
}

Table loadCsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parseCsv(in);
}

void BenchConfig::validate() const {
    if (runs < 1) throw Error("runs must be >= 1");
    if (checkpoints.empty()) throw Error("need at least one checkpoint");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (!(checkpoints[i] > checkpoints[i - 1])) throw Error("checkpoints must be strictly increasing");
    for (const auto& v : variants)
        if (v.evalPlayouts < 1) throw Error("P must be >= 1");
    search.validate();
}

BenchReport runBench(const BenchConfig& config, const LoadedProblem& problem) {
    config.validate();
    BenchReport report;
    report.table.times = config.checkpoints;
    SearchConfig search = config.search;
    search.deadline = std::chrono::duration<double>(config.checkpoints.back());

    double bestScore = -std::numeric_limits<double>::infinity();
    for (const auto& variant : orderVariants(config.variants)) {
        auto results = runMany(problem, variant, search, config.runs, config.seedBase, config.workers);
        std::vector<RunTrace> traces;
        for (const auto& r : results) {
            traces.push_back(r.trace);
            if (r.trace.best.score > bestScore) {
                bestScore = r.trace.best.score;
                report.best = r.trace.best;
                report.bestVariant = variant.name();
            }
        }
        report.table.columns.push_back(variant.name());
        report.table.values.push_back(aggregate(traces, config.checkpoints, problem.sentinel()));
        report.runs.push_back(std::move(results));
    }
    return report;
}

void writeSolution(const SolutionFile& s, std::ostream& out) {
    out << "problem " << s.problem << '\n';
    out << "instance " << s.instanceHash << '\n';
    out << "score " << formatNumber(s.sequence.score) << '\n';
    out << "moves " << s.sequence.moves.size() << '\n';
    for (std::size_t i = 0; i < s.sequence.moves.size(); ++i)
        out << s.sequence.moves[i] << (i + 1 == s.sequence.moves.size() ? "\n" : " ");
}

void writeSolution(const SolutionFile& solution, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    writeSolution(solution, out);
    if (!out) throw Error("failed writing '" + path + "'");
}

SolutionFile readSolution(std::istream& in) {
    SolutionFile s;
    std::map<std::string, std::string> fields;
    std::string key;
    for (const char* expected : {"problem", "instance", "score", "moves"}) {
        std::string value;
        if (!(in >> key >> value) || key != expected)
            throw Error(std::string("solution file: expected '") + expected + "'");
        fields[key] = value;
    }
    s.problem = fields["problem"];
    s.instanceHash = fields["instance"];
    s.sequence.score = parseNumber(fields["score"]);
    const auto count = static_cast<std::size_t>(parseNumber(fields["moves"]));
    s.sequence.moves.resize(count);
    for (auto& m : s.sequence.moves)
        if (!(in >> m)) throw Error("solution file: truncated move list");
    return s;
}

SolutionFile readSolution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return readSolution(in);
}

} // namespace nrpa::bench
