#include <catch2/catch.hpp>

#include "coverforge/field_gen.hpp"
#include "coverforge/robot_sim.hpp"
#include "helpers.hpp"

using namespace coverforge;

namespace {

CoverageConfig sim_config() {
    CoverageConfig cfg;
    cfg.mode = ScenarioMode::FourState;
    cfg.planner = PlannerKind::AStar;
    cfg.sensor_radius = 2;
    return cfg;
}

// Legal arcs of the operation state machine.
bool legal_transition(OpState from, OpState to) {
    if (to == OpState::Recovering) return true;  // restart can hit any state
    switch (from) {
        case OpState::Idle:
            return to == OpState::MappingLocalization || to == OpState::Covering;
        case OpState::MappingLocalization: return to == OpState::MapConversion;
        case OpState::MapConversion: return to == OpState::Covering;
        case OpState::Covering: return to == OpState::Complete;
        case OpState::Recovering:
            return to == OpState::Covering || to == OpState::MappingLocalization;
        case OpState::Complete: return false;
    }
    return false;
}

CoverageReport run_to_completion(Simulator& sim, std::vector<SimEvent>* events = nullptr) {
    OpState prev = sim.op_state();
    while (!sim.complete()) {
        const SimEvent ev = sim.step();
        if (events) events->push_back(ev);
        const OpState now = sim.op_state();
        if (now != prev) {
            INFO(to_string(prev) << " -> " << to_string(now));
            REQUIRE(legal_transition(prev, now));
            prev = now;
        }
    }
    return sim.report();
}

}  // namespace

TEST_CASE("init_sim entry modes") {
    const GroundTruthField f = gen_irregular(8, 8, 1, 3, 3);
    const CoverageConfig cfg = sim_config();
    SECTION("a new field starts with mapping") {
        const Simulator sim = init_sim(f, {0, 0}, cfg);
        REQUIRE(sim.op_state() == OpState::MappingLocalization);
    }
    SECTION("a known field starts covering with zero mapping steps") {
        Simulator sim = init_sim(f, {0, 0}, cfg, fully_sensed_belief(f));
        REQUIRE(sim.op_state() == OpState::Covering);
        REQUIRE(sim.mapping_steps_done() == 0);
        const SimEvent first = sim.step();
        REQUIRE((first == SimEvent::Moved || first == SimEvent::Sensed));
    }
    SECTION("blocked start rejected") {
        GroundTruthField blocked = make_field(4, 4, 1);
        blocked.set(0, 0, true);
        REQUIRE_THROWS_AS(init_sim(blocked, {0, 0}, cfg), std::invalid_argument);
    }
    SECTION("known map with mismatched dimensions rejected") {
        REQUIRE_THROWS_AS(init_sim(f, {0, 0}, cfg, new_belief_map(4, 4, 1)),
                          std::invalid_argument);
    }
    SECTION("known map in three-state mode is converted") {
        CoverageConfig three = cfg;
        three.mode = ScenarioMode::ThreeState;
        Simulator sim = init_sim(f, {0, 0}, three, fully_sensed_belief(f));
        REQUIRE(state_counts(sim.belief()).partial == 0);
    }
}

TEST_CASE("mapping pass is a bounded perimeter sweep") {
    const GroundTruthField f = gen_irregular(10, 12, 2, 9, 3);
    Simulator sim = init_sim(f, {0, 0}, sim_config());
    REQUIRE(sim.mapping_pass_length() <= 2 * (10 + 12));
    long sensed_steps = 0;
    while (sim.op_state() == OpState::MappingLocalization) {
        if (sim.step() == SimEvent::Sensed) ++sensed_steps;
    }
    REQUIRE(sensed_steps == static_cast<long>(sim.mapping_pass_length()));
    REQUIRE(sim.op_state() == OpState::MapConversion);
    // conversion is one step, then covering begins
    REQUIRE(sim.step() == SimEvent::StateChanged);
    REQUIRE(sim.op_state() == OpState::Covering);
}

TEST_CASE("simulator runs to completion with legal transitions only") {
    const GroundTruthField f = gen_irregular(8, 8, 2, 21, 3);
    Simulator sim = init_sim(f, {0, 0}, sim_config());
    std::vector<SimEvent> events;
    const CoverageReport rep = run_to_completion(sim, &events);
    REQUIRE(sim.complete());
    REQUIRE(rep.complete);
    REQUIRE(events.back() == SimEvent::Completed);
    // exactly one Completed event
    REQUIRE(std::count(events.begin(), events.end(), SimEvent::Completed) == 1);
    SECTION("stepping a complete simulator fails") {
        REQUIRE_THROWS_AS(sim.step(), std::logic_error);
    }
}

TEST_CASE("event sequences replay identically") {
    const GroundTruthField f = gen_irregular(7, 7, 1, 4, 3);
    std::vector<SimEvent> first, second;
    {
        Simulator sim = init_sim(f, {0, 0}, sim_config());
        run_to_completion(sim, &first);
    }
    {
        Simulator sim = init_sim(f, {0, 0}, sim_config());
        run_to_completion(sim, &second);
    }
    REQUIRE(first == second);
}

TEST_CASE("checkpoint and restore") {
    const GroundTruthField f = gen_irregular(8, 8, 2, 13, 3);
    const CoverageConfig cfg = sim_config();

    SECTION("checkpoint at step 0 resumes to the uninterrupted report") {
        Simulator base = init_sim(f, {0, 0}, cfg);
        const CoverageReport expected = run_to_completion(base);

        Simulator fresh = init_sim(f, {0, 0}, cfg);
        const SimCheckpoint ck = fresh.checkpoint();
        Simulator resumed = Simulator::restore(ck, f, cfg);
        REQUIRE(resumed.op_state() == OpState::Recovering);
        REQUIRE(resumed.step() == SimEvent::StateChanged);
        REQUIRE(resumed.op_state() == OpState::MappingLocalization);
        const CoverageReport actual = run_to_completion(resumed);
        REQUIRE(actual == expected);
    }

    SECTION("mid-covering checkpoint serializes, parses and resumes equivalently") {
        Simulator base = init_sim(f, {0, 0}, cfg);
        const CoverageReport expected = run_to_completion(base);

        Simulator sim = init_sim(f, {0, 0}, cfg);
        for (int i = 0; i < 60; ++i) sim.step();
        REQUIRE(sim.op_state() == OpState::Covering);
        const std::string text = serialize_checkpoint(sim.checkpoint());
        const SimCheckpoint parsed = parse_checkpoint(text);
        REQUIRE(serialize_checkpoint(parsed) == text);
        Simulator resumed = Simulator::restore(parsed, f, cfg);
        const CoverageReport actual = run_to_completion(resumed);
        REQUIRE(actual == expected);
    }

    SECTION("restoring a complete checkpoint yields a complete simulator") {
        Simulator sim = init_sim(f, {0, 0}, cfg);
        run_to_completion(sim);
        const SimCheckpoint ck = sim.checkpoint();
        Simulator resumed = Simulator::restore(ck, f, cfg);
        REQUIRE(resumed.complete());
        REQUIRE(resumed.report() == sim.report());
    }

    SECTION("format version mismatch rejected") {
        Simulator sim = init_sim(f, {0, 0}, cfg);
        SimCheckpoint ck = sim.checkpoint();
        ck.format_version = 99;
        REQUIRE_THROWS_AS(Simulator::restore(ck, f, cfg), CheckpointError);
    }

    SECTION("tampered digest rejected") {
        Simulator sim = init_sim(f, {0, 0}, cfg);
        SimCheckpoint ck = sim.checkpoint();
        ck.config_digest ^= 0xDEADBEEF;
        REQUIRE_THROWS_AS(Simulator::restore(ck, f, cfg), CheckpointError);
    }

    SECTION("different config rejected by digest") {
        Simulator sim = init_sim(f, {0, 0}, cfg);
        const SimCheckpoint ck = sim.checkpoint();
        CoverageConfig other = cfg;
        other.sensor_radius = 3;
        REQUIRE_THROWS_AS(Simulator::restore(ck, f, other), CheckpointError);
    }
}

TEST_CASE("checkpoint text format details") {
    const GroundTruthField f = gen_irregular(6, 6, 1, 2, 3);
    const CoverageConfig cfg = sim_config();
    Simulator sim = init_sim(f, {0, 0}, cfg);
    for (int i = 0; i < 25; ++i) sim.step();
    const std::string text = serialize_checkpoint(sim.checkpoint());

    SECTION("format_version is the first line") {
        REQUIRE(text.rfind("format_version=1\n", 0) == 0);
    }
    SECTION("map sentinel present") {
        REQUIRE(text.find("---map---\nbelief 3 6 6\n") != std::string::npos);
        REQUIRE(text.find("---masks---\n") != std::string::npos);
    }
    SECTION("parse errors carry context") {
        REQUIRE_THROWS_AS(parse_checkpoint("format_version=1\n"), CheckpointError);
        REQUIRE_THROWS_AS(parse_checkpoint(""), CheckpointError);
        std::string bad = text;
        bad.replace(bad.find("op_state="), 9, "op_stat=");
        REQUIRE_THROWS_AS(parse_checkpoint(bad), CheckpointError);
    }
    SECTION("unknown op_state rejected") {
        std::string bad = text;
        const auto pos = bad.find("op_state=");
        const auto eol = bad.find('\n', pos);
        bad.replace(pos, eol - pos, "op_state=flying");
        REQUIRE_THROWS_AS(parse_checkpoint(bad), CheckpointError);
    }
}

TEST_CASE("checkpoint mask invariants are enforced on parse") {
    const GroundTruthField f = gen_irregular(6, 6, 2, 5, 3);
    const CoverageConfig cfg = sim_config();
    Simulator sim = init_sim(f, {0, 0}, cfg);
    for (int i = 0; i < 40; ++i) sim.step();
    const std::string text = serialize_checkpoint(sim.checkpoint());
    const auto masks_at = text.find("---masks---\n");
    REQUIRE(masks_at != std::string::npos);
    const auto line_start = masks_at + 12;
    const auto sp1 = text.find(' ', line_start);
    REQUIRE(sp1 != std::string::npos);

    SECTION("all-blocked mask rejected") {
        std::string bad = text;
        bad.replace(sp1 + 1, 3, "fff");  // k=3: 9 bits in 3 hex digits
        REQUIRE_THROWS_AS(parse_checkpoint(bad), CheckpointError);
    }
    SECTION("all-free mask rejected") {
        std::string bad = text;
        bad.replace(sp1 + 1, 3, "000");
        REQUIRE_THROWS_AS(parse_checkpoint(bad), CheckpointError);
    }
    SECTION("covered overlapping blocked rejected") {
        std::string bad = text;
        const auto sp2 = bad.find(' ', sp1 + 1);
        bad.replace(sp2 + 1, 3, bad.substr(sp1 + 1, 3));  // covered := blocked
        REQUIRE_THROWS_AS(parse_checkpoint(bad), CheckpointError);
    }
}

TEST_CASE("sub-mask hex encoding round-trips") {
    SubMask m(9, 0);
    m[0] = m[3] = m[8] = 1;
    const std::string hex = coverforge::detail::mask_to_hex(m);
    REQUIRE(hex.size() == 3);
    REQUIRE(coverforge::detail::mask_from_hex(hex, 9, 1) == m);
    const SubMask empty(4, 0);
    REQUIRE(coverforge::detail::mask_from_hex(coverforge::detail::mask_to_hex(empty), 4, 1) ==
            empty);
}
