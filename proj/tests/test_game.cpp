#include <doctest.h>

#include <random>

#include "pebble/game.hpp"
#include "pebble/generators.hpp"
#include "pebble/strategies.hpp"
#include "support.hpp"

using namespace pebble;

namespace {

GameConfig cfg_of(GameKind kind, int r) {
    GameConfig cfg;
    cfg.kind = kind;
    cfg.capacity = r;
    return cfg;
}

}  // namespace

TEST_CASE("initial states") {
    auto fig1 = gen_figure1(true);
    auto prbp = prbp_initial_state(fig1);
    CHECK(prbp.pebble[0] == PebbleState::Blue);  // u0
    for (NodeId v = 1; v < fig1.node_count(); ++v) CHECK(prbp.pebble[v] == PebbleState::None);
    CHECK(prbp.marked.none());

    auto chain = ComputationDag::build(2, {{0, 1}});
    auto rbp = rbp_initial_state(chain);
    CHECK(rbp.red.none());
    CHECK(rbp.blue.test(0));
    CHECK(!rbp.blue.test(1));

    auto spart = gen_spart_counterexample(2);
    auto init = prbp_initial_state(spart);
    int blues = 0;
    for (auto p : init.pebble) blues += p == PebbleState::Blue;
    CHECK(blues == 7);
}

TEST_CASE("partial compute marks the edge and darkens the target") {
    auto fig1 = gen_figure1(true);
    auto cfg = cfg_of(GameKind::Prbp, 4);
    auto s = prbp_initial_state(fig1);
    s = apply_move(s, Move::load(0), fig1, cfg);
    CHECK(s.pebble[0] == PebbleState::BlueLightRed);
    s = apply_move(s, Move::pcompute(0, 1), fig1, cfg);
    CHECK(s.pebble[1] == PebbleState::DarkRed);
    CHECK(s.marked.test(*fig1.edge_id(0, 1)));
}

TEST_CASE("compute with an unpebbled input is rejected") {
    auto fig1 = gen_figure1(true);
    auto cfg = cfg_of(GameKind::Rbp, 4);
    auto s = rbp_initial_state(fig1);
    CHECK_THROWS_AS(apply_move(s, Move::compute(1), fig1, cfg), RuleViolation);
}

TEST_CASE("partial compute onto a loaded node drops the stale blue copy") {
    // 0 -> 2, 1 -> 2: compute 2 partially from 0, save it, load it back,
    // then aggregating 1 must leave a dark red pebble only.
    auto dag = ComputationDag::build(3, {{0, 2}, {1, 2}});
    auto cfg = cfg_of(GameKind::Prbp, 3);
    auto s = prbp_initial_state(dag);
    for (const Move& m : {Move::load(0), Move::pcompute(0, 2), Move::save(2), Move::del(2),
                          Move::load(1), Move::load(2), Move::pcompute(1, 2)})
        s = apply_move(s, m, dag, cfg);
    CHECK(s.pebble[2] == PebbleState::DarkRed);
}

TEST_CASE("terminal conditions") {
    auto chain = ComputationDag::build(3, {{0, 1}, {1, 2}});
    auto cfg = cfg_of(GameKind::Prbp, 2);
    auto s = prbp_initial_state(chain);
    CHECK(!is_terminal(s, chain));

    // All edges marked but the sink still dark red: not terminal.
    for (const Move& m : {Move::load(0), Move::pcompute(0, 1), Move::del(0),
                          Move::pcompute(1, 2), Move::del(1)})
        s = apply_move(s, m, chain, cfg);
    CHECK(s.marked.all());
    CHECK(!is_terminal(s, chain));
    s = apply_move(s, Move::save(2), chain, cfg);
    CHECK(is_terminal(s, chain));

    auto rbp = rbp_initial_state(chain);
    rbp.blue.set(2);  // all sinks blue
    CHECK(is_terminal(rbp, chain));
}

TEST_CASE("reference schedules replay at the published costs") {
    auto fig1 = gen_figure1(true);

    auto prbp = figure1_golden(GameKind::Prbp);
    auto report = validate_schedule(fig1, prbp.schedule.config, prbp.schedule);
    CHECK(report.valid);
    CHECK(report.terminal);
    CHECK(report.io_cost == 2);
    CHECK(report.peak_red <= 4);

    auto rbp = figure1_golden(GameKind::Rbp);
    report = validate_schedule(fig1, rbp.schedule.config, rbp.schedule);
    CHECK(report.valid);
    CHECK(report.terminal);
    CHECK(report.io_cost == 3);
    CHECK(report.peak_red <= 4);

    // The same partial-computing schedule must fail at r = 3: four pebbles
    // are simultaneously needed around the w-join.
    auto tight = prbp.schedule;
    tight.config.capacity = 3;
    report = validate_schedule(fig1, tight.config, tight);
    CHECK(!report.valid);
    CHECK(report.first_error.has_value());
}

TEST_CASE("empty schedule is valid and not terminal") {
    auto chain = ComputationDag::build(2, {{0, 1}});
    Schedule empty;
    empty.config = cfg_of(GameKind::Prbp, 2);
    auto report = validate_schedule(chain, empty.config, empty);
    CHECK(report.valid);
    CHECK(!report.terminal);
    CHECK(report.io_cost == 0);
}

TEST_CASE("redundant loads and saves are accepted and billed") {
    auto chain = ComputationDag::build(2, {{0, 1}});
    Schedule sched;
    sched.config = cfg_of(GameKind::Rbp, 2);
    sched.moves = {Move::load(0), Move::load(0), Move::compute(1), Move::save(1),
                   Move::save(1)};
    auto report = validate_schedule(chain, sched.config, sched);
    CHECK(report.valid);
    CHECK(report.terminal);
    CHECK(report.io_cost == 4);
}

TEST_CASE("dark red delete requires marked out-edges") {
    auto chain = ComputationDag::build(3, {{0, 1}, {1, 2}});
    auto cfg = cfg_of(GameKind::Prbp, 3);
    auto s = prbp_initial_state(chain);
    s = apply_move(s, Move::load(0), chain, cfg);
    s = apply_move(s, Move::pcompute(0, 1), chain, cfg);
    CHECK_THROWS_AS(apply_move(s, Move::del(1), chain, cfg), RuleViolation);
    s = apply_move(s, Move::pcompute(1, 2), chain, cfg);
    CHECK_NOTHROW(apply_move(s, Move::del(1), chain, cfg));
}

TEST_CASE("capacity is enforced") {
    auto dag = ComputationDag::build(3, {{0, 2}, {1, 2}});
    auto cfg = cfg_of(GameKind::Prbp, 2);
    auto s = prbp_initial_state(dag);
    s = apply_move(s, Move::load(0), dag, cfg);
    s = apply_move(s, Move::load(1), dag, cfg);
    try {
        apply_move(s, Move::pcompute(0, 2), dag, cfg);
        FAIL("capacity violation not raised");
    } catch (const RuleViolation& e) {
        CHECK(std::string(e.what()).find("fast memory full") != std::string::npos);
    }
}

TEST_CASE("sliding variant") {
    auto dag = ComputationDag::build(3, {{0, 2}, {1, 2}});
    auto cfg = cfg_of(GameKind::Rbp, 2);

    Schedule sched;
    sched.config = cfg;
    sched.config.sliding = true;
    sched.moves = {Move::load(0), Move::load(1), Move::slide(0, 2), Move::save(2)};
    auto report = validate_schedule(dag, sched.config, sched);
    CHECK(report.valid);
    CHECK(report.terminal);
    CHECK(report.io_cost == 3);
    CHECK(report.peak_red == 2);  // the slide reuses the origin's slot

    sched.config.sliding = false;
    report = validate_schedule(dag, sched.config, sched);
    CHECK(!report.valid);
}

TEST_CASE("clear rule unmarks in-edges for recomputation") {
    auto chain = ComputationDag::build(3, {{0, 1}, {1, 2}});
    auto cfg = cfg_of(GameKind::Prbp, 3);
    cfg.allow_clear = true;

    auto s = prbp_initial_state(chain);
    s = apply_move(s, Move::load(0), chain, cfg);
    s = apply_move(s, Move::pcompute(0, 1), chain, cfg);
    CHECK_THROWS_AS(apply_move(s, Move::clear(0), chain, cfg), RuleViolation);  // source
    CHECK_THROWS_AS(apply_move(s, Move::clear(2), chain, cfg), RuleViolation);  // sink
    auto cleared = apply_move(s, Move::clear(1), chain, cfg);
    CHECK(cleared.pebble[1] == PebbleState::None);
    CHECK(!cleared.marked.test(*chain.edge_id(0, 1)));
    // And the edge can be aggregated again afterwards.
    CHECK_NOTHROW(apply_move(cleared, Move::pcompute(0, 1), chain, cfg));

    cfg.allow_clear = false;
    CHECK_THROWS_AS(apply_move(s, Move::clear(1), chain, cfg), RuleViolation);
}

TEST_CASE("no-deletion variant") {
    auto chain = ComputationDag::build(2, {{0, 1}});
    auto rbp_cfg = cfg_of(GameKind::Rbp, 2);
    rbp_cfg.no_deletion = true;

    auto s = rbp_initial_state(chain);
    s = apply_move(s, Move::load(0), chain, rbp_cfg);
    CHECK_THROWS_AS(apply_move(s, Move::del(0), chain, rbp_cfg), RuleViolation);
    s = apply_move(s, Move::compute(1), chain, rbp_cfg);
    s = apply_move(s, Move::save(1), chain, rbp_cfg);
    CHECK(!s.red.test(1));  // save replaces the red pebble with the blue one
    CHECK(s.blue.test(1));

    auto prbp_cfg = cfg_of(GameKind::Prbp, 2);
    prbp_cfg.no_deletion = true;
    auto p = prbp_initial_state(chain);
    p = apply_move(p, Move::load(0), chain, prbp_cfg);
    p = apply_move(p, Move::pcompute(0, 1), chain, prbp_cfg);
    CHECK_THROWS_AS(apply_move(p, Move::del(1), chain, prbp_cfg), RuleViolation);
    CHECK_NOTHROW(apply_move(p, Move::del(0), chain, prbp_cfg));  // light red still leaves
    p = apply_move(p, Move::save(1), chain, prbp_cfg);
    CHECK_NOTHROW(apply_move(p, Move::del(1), chain, prbp_cfg));
}

TEST_CASE("compute costs, both weightings") {
    // Diamond: in-degrees 1, 1, 2.
    auto dag = ComputationDag::build(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    Schedule sched;
    sched.config = cfg_of(GameKind::Prbp, 3);
    sched.config.compute_cost = Rational(1);
    sched.moves = {Move::load(0),        Move::pcompute(0, 1), Move::pcompute(0, 2),
                   Move::del(0),         Move::pcompute(1, 3), Move::del(1),
                   Move::pcompute(2, 3), Move::del(2),         Move::save(3)};

    auto report = validate_schedule(dag, sched.config, sched);
    CHECK(report.valid);
    CHECK(report.compute_cost == Rational(4));  // one per partial compute

    sched.config.cost_split = PrbpCostSplit::PerEdgeScaledByInDegree;
    report = validate_schedule(dag, sched.config, sched);
    CHECK(report.valid);
    CHECK(report.compute_cost == Rational(3));  // 1 + 1 + 1/2 + 1/2

    auto chain = ComputationDag::build(3, {{0, 1}, {1, 2}});
    Schedule rbp;
    rbp.config = cfg_of(GameKind::Rbp, 2);
    rbp.config.compute_cost = Rational(1, 4);
    rbp.moves = {Move::load(0), Move::compute(1), Move::del(0), Move::compute(2),
                 Move::del(1), Move::save(2)};
    report = validate_schedule(chain, rbp.config, rbp);
    CHECK(report.valid);
    CHECK(report.compute_cost == Rational(1, 2));
    CHECK(report.io_cost == 2);
}

TEST_CASE("translation of the figure1 reference schedule") {
    auto fig1 = gen_figure1(true);
    auto rbp = figure1_golden(GameKind::Rbp);
    auto prbp = translate_rbp_to_prbp(fig1, rbp.schedule);
    auto report = validate_schedule(fig1, prbp.config, prbp);
    CHECK(report.valid);
    CHECK(report.terminal);
    CHECK(report.io_cost == 3);
}

TEST_CASE("translation of a tiny chain") {
    auto chain = ComputationDag::build(2, {{0, 1}});
    Schedule sched;
    sched.config = cfg_of(GameKind::Rbp, 2);
    sched.moves = {Move::load(0), Move::compute(1), Move::save(1)};
    auto prbp = translate_rbp_to_prbp(chain, sched);
    REQUIRE(prbp.moves.size() == 3);
    CHECK(prbp.moves[1] == Move::pcompute(0, 1));
    auto report = validate_schedule(chain, prbp.config, prbp);
    CHECK(report.valid);
    CHECK(report.terminal);
    CHECK(report.io_cost == 2);
}

TEST_CASE("translation rejects invalid sources") {
    auto chain = ComputationDag::build(2, {{0, 1}});
    Schedule bad;
    bad.config = cfg_of(GameKind::Rbp, 2);
    bad.moves = {Move::compute(1)};
    CHECK_THROWS_AS(translate_rbp_to_prbp(chain, bad), ScheduleError);

    Schedule sliding;
    sliding.config = cfg_of(GameKind::Rbp, 2);
    sliding.config.sliding = true;
    CHECK_THROWS_AS(translate_rbp_to_prbp(chain, sliding), ScheduleError);
}

TEST_CASE("translation preserves cost on random zipper schedules") {
    auto dag = gen_zipper(3, 3);
    auto cfg = cfg_of(GameKind::Rbp, 5);
    std::mt19937_64 rng(424242);
    int produced = 0;
    for (int iter = 0; iter < 40 && produced < 12; ++iter) {
        auto sched = testsupport::random_valid_schedule(dag, cfg, rng);
        if (!sched) continue;
        ++produced;
        auto before = validate_schedule(dag, cfg, *sched);
        REQUIRE(before.valid);
        REQUIRE(before.terminal);
        auto prbp = translate_rbp_to_prbp(dag, *sched);
        auto after = validate_schedule(dag, prbp.config, prbp);
        CHECK(after.valid);
        CHECK(after.terminal);
        CHECK(after.io_cost == before.io_cost);
    }
    CHECK(produced > 0);
}

TEST_CASE("capacity safety on random valid schedules") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        auto dag = testsupport::random_dag(rng, 7, 9);
        auto cfg = cfg_of(GameKind::Prbp, 2 + static_cast<int>(rng() % 3));
        auto sched = testsupport::random_valid_schedule(dag, cfg, rng, 10);
        if (!sched) continue;
        auto report = validate_schedule(dag, cfg, *sched);
        CHECK(report.valid);
        CHECK(report.peak_red <= cfg.capacity);
    }
}
