#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "nrpa/maximum.hpp"
#include "nrpa/search.hpp"
#include "nrpa/tsptw.hpp"
#include "toy_problems.hpp"

using namespace nrpa;
using nrpa::testing::OneStepProblem;
using nrpa::testing::StuckProblem;

TEST_CASE("softmax examples") {
    auto p = softmaxProbabilities(std::vector<double>{0.0, 0.0});
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-15));

    for (double c : {-3.0, 0.0, 7.5, 900.0}) {
        p = softmaxProbabilities(std::vector<double>{c, c, c, c});
        for (double x : p) CHECK(std::abs(x - 0.25) < 1e-15);
    }

    p = softmaxProbabilities(std::vector<double>{std::log(1.0), std::log(3.0)});
    CHECK(std::abs(p[0] - 0.25) < 1e-12);
    CHECK(std::abs(p[1] - 0.75) < 1e-12);
}

TEST_CASE("softmax rejects empty and non-finite input") {
    CHECK_THROWS_WITH_AS(softmaxProbabilities(std::vector<double>{}), "no legal moves", Error);
    CHECK_THROWS_AS(softmaxProbabilities(std::vector<double>{0.0, std::nan("")}), Error);
    CHECK_THROWS_AS(softmaxProbabilities(std::vector<double>{std::numeric_limits<double>::infinity()}), Error);
}

TEST_CASE("softmax normalisation and shift invariance hold on random weights") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> w(-800.0, 800.0);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> weights(1 + trial % 40);
        for (double& x : weights) x = w(gen) * (trial % 2 ? 1.0 : 1e-2);
        const auto p = softmaxProbabilities(weights);
        double sum = 0.0;
        for (double x : p) {
            CHECK(x <= 1.0);
            sum += x;
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);

        const double c = shift(gen);
        auto shifted = weights;
        for (double& x : shifted) x += c;
        const auto q = softmaxProbabilities(shifted);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - q[i]) < 1e-12);
    }
    // Moderate weights: every probability strictly positive.
    const auto p = softmaxProbabilities(std::vector<double>{-30.0, 0.0, 30.0});
    for (double x : p) CHECK(x > 0.0);
}

TEST_CASE("playout from a terminal root returns the root score and no moves") {
    OneStepProblem empty({});
    RngStream rng(1);
    const auto seq = playout(empty, WeightTable{}, rng);
    CHECK(seq.moves.empty());
    CHECK(seq.score == -1.0);
    CHECK(rng.draws() == 0);
}

TEST_CASE("playout with a zero policy picks uniformly") {
    constexpr int k = 5;
    constexpr int samples = 10000;
    OneStepProblem problem({10, 11, 12, 13, 14});
    RngStream rng(99);
    std::vector<int> hits(k, 0);
    for (int s = 0; s < samples; ++s) ++hits[static_cast<int>(playout(problem, WeightTable{}, rng).score)];
    const double p = 1.0 / k;
    const double sigma = std::sqrt(samples * p * (1 - p));
    for (int h : hits) CHECK(std::abs(h - samples * p) < 3 * sigma);
}

TEST_CASE("playout on a stuck state raises") {
    StuckProblem stuck;
    RngStream rng(0);
    CHECK_THROWS_WITH_AS(playout(stuck, WeightTable{}, rng),
                         "stuck state: non-terminal state without legal moves", Error);
}

TEST_CASE("playout output replays to its own score") {
    maximum::MaximumProblem problem(3);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RngStream rng(seed);
        const auto seq = playout(problem, WeightTable{}, rng);
        const auto end = replay(problem, std::span<const MoveCode>(seq.moves));
        CHECK(problem.isTerminal(end));
        CHECK(problem.score(end) == seq.score);
    }
}

TEST_CASE("replay: empty list is the root, corrupted code fails at its index") {
    maximum::MaximumProblem problem(9);
    const auto root = replay(problem, std::span<const MoveCode>{});
    CHECK(root.prefix.empty());
    CHECK(root.openSlots == 1);

    RngStream rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto seq = playout(problem, WeightTable{}, rng);
        if (seq.moves.size() < 2) continue;
        const std::size_t bad = static_cast<std::size_t>(trial) % seq.moves.size();
        seq.moves[bad] = 999999;
        try {
            replay(problem, std::span<const MoveCode>(seq.moves));
            FAIL("corrupted sequence replayed");
        } catch (const ReplayError& e) {
            CHECK(e.step() == bad);
        }
    }
}

TEST_CASE("adapt with an empty sequence returns the input table") {
    OneStepProblem problem({0, 1});
    WeightTable w;
    w.set(0, 0.3);
    w.set(1, -1.2);
    CHECK(adapt(w, std::span<const MoveCode>{}, problem, 1.0) == w);
}

TEST_CASE("adapt on two equal-weight moves moves half of alpha each way") {
    OneStepProblem problem({7, 8});
    const std::vector<MoveCode> seq{7};
    const auto out = adapt(WeightTable{}, seq, problem, 1.0);
    CHECK(out.get(7) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(out.get(8) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("adapt algebra on random weight triples") {
    // Per visited state: delta(m) = alpha*[m played] - alpha*p(m), with p the
    // softmax of the input weights. Hence the sum of deltas is zero and the
    // played-vs-m margin grows by alpha*(1 - p_played + p_m).
    OneStepProblem problem({0, 1, 2});
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> w(-5.0, 5.0);
    std::uniform_real_distribution<double> a(0.01, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        WeightTable before;
        std::vector<double> ws(3);
        for (MoveCode c = 0; c < 3; ++c) {
            ws[c] = w(gen);
            before.set(c, ws[c]);
        }
        const double alpha = a(gen);
        const std::vector<MoveCode> seq{0};
        const auto after = adapt(before, seq, problem, alpha);
        const auto p = softmaxProbabilities(ws);

        double sum = 0.0;
        for (MoveCode c = 0; c < 3; ++c) sum += after.get(c) - before.get(c);
        CHECK(std::abs(sum) < 1e-9);

        for (MoveCode m : {MoveCode{1}, MoveCode{2}}) {
            const double margin = (after.get(0) - after.get(m)) - (before.get(0) - before.get(m));
            CHECK(std::abs(margin - alpha * (1.0 - p[0] + p[m])) < 1e-9);
            CHECK(margin > 0.0);
        }
        const std::vector<double> ws2{after.get(0), after.get(1), after.get(2)};
        CHECK(softmaxProbabilities(ws2)[0] > p[0]);
    }
}

TEST_CASE("adapt leaves the input table untouched") {
    maximum::MaximumProblem problem(7);
    RngStream rng(4);
    const auto seq = playout(problem, WeightTable{}, rng);
    WeightTable policy;
    policy.set(0, 0.25);
    const WeightTable snapshot = policy;
    const auto out = adapt(policy, std::span<const MoveCode>(seq.moves), problem, 1.0);
    CHECK(policy == snapshot);
    CHECK_FALSE(out == policy);
}

TEST_CASE("adapt rejects a sequence that does not replay") {
    maximum::MaximumProblem problem(3);
    // '+' at position 0 then '+' at position 1: the second operator overflows the budget.
    const std::vector<MoveCode> seq{0, 3};
    try {
        adapt(WeightTable{}, seq, problem, 1.0);
        FAIL("expected mismatch");
    } catch (const ReplayError& e) {
        CHECK(e.step() == 1);
        CHECK(std::string(e.what()).find("sequence/root mismatch") != std::string::npos);
    }
}

TEST_CASE("nrpa level 0 is a single playout with the same stream use") {
    maximum::MaximumProblem problem(11);
    SearchConfig cfg;
    NestedSearch search(problem, cfg);
    RngStream a(21);
    const auto viaSearch = search.nrpa(0, WeightTable{}, a);

    RngStream b(21);
    RngStream child = b.split();
    const auto direct = playout(problem, WeightTable{}, child);
    CHECK(viaSearch == direct);
    CHECK(a.draws() == b.draws());
    CHECK(search.stats().playouts == 1);
    CHECK(search.stats().adapts == 0);
}

TEST_CASE("nrpa level 1 with one iteration runs one playout and one adapt") {
    maximum::MaximumProblem problem(9);
    SearchConfig cfg;
    cfg.iterations = 1;
    NestedSearch search(problem, cfg);
    RngStream rng(8);
    const auto result = search.nrpa(1, WeightTable{}, rng);

    RngStream again(8);
    RngStream child = again.split();
    CHECK(result == playout(problem, WeightTable{}, child));
    CHECK(search.stats().playouts == 1);
    CHECK(search.stats().adapts == 1);
}

TEST_CASE("best score within a level never decreases") {
    tsptw::TsptwProblem problem(tsptw::TsptwInstance::fromCoordinates(
        {{0, 0}, {5, 1}, {9, 4}, {2, 8}, {7, 7}, {1, 3}},
        {{0, 1000}, {0, 40}, {10, 30}, {0, 60}, {20, 50}, {0, 1000}}));
    for (auto algo : {Algorithm::Nrpa, Algorithm::Stabilized}) {
        SearchConfig cfg;
        cfg.level = 3;
        cfg.iterations = 8;
        cfg.evalPlayouts = 3;
        NestedSearch search(problem, cfg);
        std::map<int, double> last;
        std::map<int, int> lastIter;
        int observed = 0;
        search.setIterationObserver([&](int level, int iter, double best) {
            ++observed;
            if (iter > 0) {
                CHECK(lastIter[level] == iter - 1);
                CHECK(best >= last[level]);
            }
            last[level] = best;
            lastIter[level] = iter;
        });
        const auto best = search.run(algo);
        CHECK(observed > 0);

        const auto& events = search.trace().events;
        REQUIRE_FALSE(events.empty());
        for (std::size_t i = 1; i < events.size(); ++i) {
            CHECK(events[i].score > events[i - 1].score);
            CHECK(events[i].elapsed >= events[i - 1].elapsed);
            CHECK(events[i].playout > events[i - 1].playout);
        }
        CHECK(best.score == events.back().score);
        CHECK(replayMatches(problem, best));
    }
}

TEST_CASE("stabilized level 1 evaluates P playouts without adapting") {
    maximum::MaximumProblem problem(15);
    SearchConfig cfg;
    cfg.evalPlayouts = 4;
    NestedSearch search(problem, cfg);
    WeightTable policy;
    policy.set(2, 0.7);
    policy.set(4, -0.3);
    const WeightTable before = policy;
    RngStream rng(6);
    const auto best = search.snrpa(1, policy, rng);
    CHECK(policy == before);
    CHECK(search.stats().playouts == 4);
    CHECK(search.stats().adapts == 0);
    CHECK(rng.draws() == 4);

    // Best of the four child streams, later streams winning ties.
    RngStream again(6);
    MoveSequence expect;
    expect.score = -1.0;
    for (int i = 0; i < 4; ++i) {
        RngStream child = again.split();
        auto s = playout(problem, before, child);
        if (s.score >= expect.score) expect = s;
    }
    CHECK(best == expect);
}

TEST_CASE("stabilized level 2 runs N adapts and N*P playouts") {
    maximum::MaximumProblem problem(21);
    for (int n : {1, 3, 10}) {
        for (int p : {1, 2, 5}) {
            SearchConfig cfg;
            cfg.iterations = n;
            cfg.evalPlayouts = p;
            NestedSearch search(problem, cfg);
            RngStream rng(static_cast<std::uint64_t>(n * 10 + p));
            search.snrpa(2, WeightTable{}, rng);
            CHECK(search.stats().adapts == static_cast<std::uint64_t>(n));
            CHECK(search.stats().playouts == static_cast<std::uint64_t>(n * p));
        }
    }
}

TEST_CASE("stabilized with P = 1 matches nrpa one level down") {
    maximum::MaximumProblem problem(13);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SearchConfig cfg;
        cfg.iterations = 6;
        cfg.evalPlayouts = 1;
        NestedSearch plain(problem, cfg);
        NestedSearch stab(problem, cfg);
        RngStream a(seed), b(seed);
        const auto r1 = plain.nrpa(2, WeightTable{}, a);
        const auto r2 = stab.snrpa(3, WeightTable{}, b);
        CHECK(r1 == r2);
        CHECK(a.draws() == b.draws());
        CHECK(plain.stats().playouts == stab.stats().playouts);
        CHECK(plain.stats().adapts == stab.stats().adapts);
    }
}

TEST_CASE("identical seeds give identical runs") {
    maximum::MaximumProblem problem(17);
    SearchConfig cfg;
    cfg.level = 2;
    cfg.iterations = 20;
    cfg.evalPlayouts = 3;
    cfg.seed = 1234;
    for (auto algo : {Algorithm::Nrpa, Algorithm::Stabilized}) {
        NestedSearch a(problem, cfg), b(problem, cfg);
        a.run(algo);
        b.run(algo);
        CHECK(sameSearch(a.trace(), b.trace()));
    }
}

TEST_CASE("zero deadline stops after the first playout") {
    maximum::MaximumProblem problem(31);
    for (auto algo : {Algorithm::Nrpa, Algorithm::Stabilized}) {
        SearchConfig cfg;
        cfg.level = 4;
        cfg.evalPlayouts = 4;
        cfg.deadline = std::chrono::duration<double>(0.0);
        NestedSearch search(problem, cfg);
        const auto best = search.run(algo);
        CHECK(search.stats().playouts == 1);
        CHECK(search.stats().adapts == 0);
        CHECK(search.trace().events.size() == 1);
        CHECK(replayMatches(problem, best));
    }
}

TEST_CASE("no playout starts after the deadline except a first one") {
    maximum::MaximumProblem problem(60);
    for (auto algo : {Algorithm::Nrpa, Algorithm::Stabilized}) {
        SearchConfig cfg;
        cfg.level = 4;
        cfg.evalPlayouts = 3;
        cfg.deadline = std::chrono::duration<double>(0.05);
        NestedSearch search(problem, cfg);
        search.run(algo);
        CHECK(search.stats().playoutsAfterDeadline == 0);
        CHECK(search.stats().playouts > 1);
        CHECK(search.elapsed() < 1.0);
    }
}

TEST_CASE("parallel evaluation matches sequential evaluation") {
    maximum::MaximumProblem problem(25);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SearchConfig cfg;
        cfg.level = 3;
        cfg.iterations = 5;
        cfg.evalPlayouts = 4;
        cfg.seed = seed;
        NestedSearch seq(problem, cfg);
        cfg.evalWorkers = 4;
        NestedSearch par(problem, cfg);
        seq.run(Algorithm::Stabilized);
        par.run(Algorithm::Stabilized);
        CHECK(sameSearch(seq.trace(), par.trace()));
    }
}

TEST_CASE("search configuration is validated") {
    maximum::MaximumProblem problem(3);
    SearchConfig cfg;
    cfg.evalPlayouts = 0;
    CHECK_THROWS_AS(NestedSearch(problem, cfg), Error);
    cfg = {};
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(NestedSearch(problem, cfg), Error);
    cfg = {};
    cfg.iterations = 0;
    CHECK_THROWS_AS(NestedSearch(problem, cfg), Error);
    cfg = {};
    NestedSearch ok(problem, cfg);
    RngStream rng(0);
    CHECK_THROWS_AS(ok.nrpa(-1, WeightTable{}, rng), Error);
}

TEST_CASE("weight table reads absent codes as zero and rejects non-finite values") {
    WeightTable t;
    CHECK(t.get(123456789) == 0.0);
    CHECK_THROWS_AS(t.set(1, std::nan("")), Error);
    t.set(1, 0.0);
    CHECK(t == WeightTable{});
}

TEST_CASE("eval pool propagates task exceptions") {
    EvalPool pool(3);
    std::vector<int> out(50, 0);
    pool.run(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i) * 2);
    CHECK_THROWS_AS(pool.run(10, [](std::size_t i) { if (i == 7) throw Error("boom"); }), Error);
    pool.run(3, [&](std::size_t i) { out[i] = -1; });
    CHECK(out[2] == -1);
}
