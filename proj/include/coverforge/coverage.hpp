#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coverforge/grid.hpp"
#include "coverforge/planners.hpp"

// The coverage loop: sense at the pose, mark it covered, pick the nearest
// uncovered candidate via a single-source cost sweep, follow a planned path
// one cell per tick while sensing, and replan (optionally switching planner)
// whenever newly sensed obstacles invalidate the remaining path. Runs in
// Scenario-1 (three-state) or Scenario-2 (four-state) mode.

namespace coverforge {

enum class ScenarioMode : std::uint8_t { ThreeState, FourState };

inline const char* to_string(ScenarioMode m) {
    return m == ScenarioMode::ThreeState ? "three" : "four";
}

struct CoverageConfig {
    ScenarioMode mode = ScenarioMode::FourState;
    PlannerKind planner = PlannerKind::AStar;
    TraversalPolicy policy;
    int sensor_radius = 2;
    bool switch_on_replan = true;
    long max_ticks = 0;  // 0 = rows*cols*50, chosen at run time; must be >= rows*cols
    double minutes_per_tick = 0.05;  // report scaling only
    bool tick_per_turn = false;      // charge one extra tick per direction change
};

struct CoverageReport {
    double coverage_percent = 0.0;
    long ticks = 0;
    double minutes = 0.0;
    double path_length = 0.0;  // geometric length, diagonal steps count sqrt 2
    long turns = 0;
    long replans = 0;
    long planner_switches = 0;
    long partial_cells_identified = 0;
    long revisits = 0;  // moves that entered an already-entered cell
    bool complete = false;
    std::vector<GridPos> trajectory;
    friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

// Number of indices where the movement direction changes.
inline long count_turns(const std::vector<GridPos>& trajectory) {
    long turns = 0;
    for (std::size_t i = 2; i < trajectory.size(); ++i) {
        const int dr0 = trajectory[i - 1].row - trajectory[i - 2].row;
        const int dc0 = trajectory[i - 1].col - trajectory[i - 2].col;
        const int dr1 = trajectory[i].row - trajectory[i - 1].row;
        const int dc1 = trajectory[i].col - trajectory[i - 1].col;
        if (dr0 != dr1 || dc0 != dc1) ++turns;
    }
    return turns;
}

namespace detail {

inline bool partial_has_uncovered_free(const GridMap& map, int idx) {
    const auto mit = map.partial_masks.find(idx);
    if (mit == map.partial_masks.end()) return false;
    const int free_cells = static_cast<int>(mit->second.size()) - mask_count(mit->second);
    const auto cit = map.covered_sub.find(idx);
    const int covered = cit == map.covered_sub.end() ? 0 : mask_count(cit->second);
    return covered < free_cells;
}

inline bool is_candidate(const GridMap& map, int idx, ScenarioMode mode) {
    const CellState s = map.state[idx];
    if (s == CellState::Unexplored) return true;
    if (s == CellState::PartialObstacle && mode == ScenarioMode::FourState)
        return partial_has_uncovered_free(map, idx);
    return false;
}

}  // namespace detail

// The uncovered candidate cell with minimum policy path cost from `pose`
// (one cost sweep); ties resolved in row-major order. Candidates are
// Unexplored cells plus, in four-state mode, partial cells with uncovered
// free sub-cells. Empty when no candidate is reachable.
inline std::optional<GridPos> next_target(const GridMap& map, GridPos pose, ScenarioMode mode,
                                          const TraversalPolicy& policy) {
    const std::vector<double> dist = distance_sweep(map, pose, policy);
    constexpr double inf = std::numeric_limits<double>::infinity();
    double best = inf;
    int best_idx = -1;
    for (int idx = 0; idx < static_cast<int>(dist.size()); ++idx) {
        if (dist[idx] == inf || !detail::is_candidate(map, idx, mode)) continue;
        if (dist[idx] < best) {
            best = dist[idx];
            best_idx = idx;
        }
    }
    if (best_idx < 0) return std::nullopt;
    return GridPos{best_idx / map.cols, best_idx % map.cols};
}

enum class CoverEvent : std::uint8_t { Sensed, Moved, Replanned, Done };

// Everything the loop needs to resume mid-run; the checkpoint format
// serializes exactly this (revisit bookkeeping is derived from the
// trajectory).
struct EngineState {
    GridMap map;
    GridPos pose{};
    long ticks = 0;
    long replans = 0;
    long planner_switches = 0;
    double path_length = 0.0;
    int planner_index = 0;
    bool initial_sensed = false;
    bool path_invalid = false;
    bool done = false;
    bool complete = false;
    std::optional<GridPos> target;
    std::vector<GridPos> path;
    std::size_t path_next = 0;
    std::vector<GridPos> trajectory;
    friend bool operator==(const EngineState&, const EngineState&) = default;
};

class CoverageEngine {
public:
    // Planner cycle applied on replan: AStar -> Dijkstra -> DFS -> AStar.
    static constexpr PlannerKind kPlannerCycle[3] = {PlannerKind::AStar, PlannerKind::Dijkstra,
                                                     PlannerKind::Dfs};

    CoverageEngine(GroundTruthField truth, GridMap initial_map, GridPos start, CoverageConfig cfg)
        : truth_(std::move(truth)), cfg_(cfg) {
        check_consistent(initial_map, truth_);
        validate_config();
        if (!initial_map.in_bounds(start))
            throw std::out_of_range("coverage: start out of bounds");
        const CellClass start_cls = classify_coarse_cell(truth_, start);
        if (start_cls.is_obstacle() ||
            (start_cls.is_partial() && cfg_.mode == ScenarioMode::ThreeState))
            throw std::invalid_argument("coverage: start cell is blocked");
        st_.map = std::move(initial_map);
        st_.pose = start;
        st_.planner_index = planner_cycle_index(cfg_.planner);
        entered_.assign(static_cast<std::size_t>(st_.map.rows) * st_.map.cols, 0);
    }

    // Resume from a checkpointed state.
    CoverageEngine(GroundTruthField truth, CoverageConfig cfg, EngineState st)
        : truth_(std::move(truth)), cfg_(cfg), st_(std::move(st)) {
        check_consistent(st_.map, truth_);
        validate_config();
        // A target without a live path cannot occur in states this engine
        // serializes; drop it so a foreign checkpoint re-selects instead of
        // stepping off the end of an empty path.
        if (st_.target &&
            (st_.path.empty() || st_.path_next == 0 || st_.path_next >= st_.path.size())) {
            st_.target.reset();
            st_.path.clear();
            st_.path_next = 0;
        }
        entered_.assign(static_cast<std::size_t>(st_.map.rows) * st_.map.cols, 0);
        for (const GridPos& p : st_.trajectory) {
            auto& flag = entered_[st_.map.index(p)];
            if (flag) ++revisits_;
            flag = 1;
        }
    }

    bool done() const { return st_.done; }
    const EngineState& state() const { return st_; }
    const GroundTruthField& truth() const { return truth_; }
    const CoverageConfig& config() const { return cfg_; }
    PlannerKind current_planner() const { return kPlannerCycle[st_.planner_index]; }

    CoverEvent step() {
        if (st_.done) throw std::logic_error("coverage step on a finished run");
        if (!st_.initial_sensed) {
            st_.initial_sensed = true;
            enter_cell(st_.pose);
            sense_here();
            mark_covered(st_.map, st_.pose);
            return CoverEvent::Sensed;
        }
        if (st_.path_invalid) {
            st_.path_invalid = false;
            replan();
            return CoverEvent::Replanned;
        }
        if (!st_.target) {
            const auto t = next_target(st_.map, st_.pose, cfg_.mode, cfg_.policy);
            if (!t) {
                st_.done = true;
                st_.complete = true;
                return CoverEvent::Done;
            }
            st_.target = t;
            plan_to_target();
            if (!st_.target) return CoverEvent::Replanned;  // defensive, should not happen
        }
        return advance();
    }

    CoverageReport report() const {
        CoverageReport r;
        r.coverage_percent = coverage_percent(st_.map, truth_);
        r.ticks = st_.ticks;
        r.minutes = static_cast<double>(st_.ticks) * cfg_.minutes_per_tick;
        r.path_length = st_.path_length;
        r.turns = count_turns(st_.trajectory);
        r.replans = st_.replans;
        r.planner_switches = st_.planner_switches;
        r.partial_cells_identified = state_counts(st_.map).partial;
        r.revisits = revisits_;
        r.complete = st_.complete;
        r.trajectory = st_.trajectory;
        return r;
    }

    static int planner_cycle_index(PlannerKind kind) {
        for (int i = 0; i < 3; ++i)
            if (kPlannerCycle[i] == kind) return i;
        return 0;
    }

    long effective_max_ticks() const { return max_ticks_resolved(); }

private:
    void validate_config() {
        const long cells = static_cast<long>(truth_.rows()) * truth_.cols();
        if (cfg_.max_ticks != 0 && cfg_.max_ticks < cells)
            throw std::invalid_argument("coverage: max_ticks must be at least rows*cols");
        if (cfg_.sensor_radius < 0)
            throw std::invalid_argument("coverage: sensor_radius must be non-negative");
        if (cfg_.policy.partial_cost_factor < 1.0)
            throw std::invalid_argument("coverage: partial_cost_factor must be >= 1");
        if (cfg_.minutes_per_tick <= 0.0)
            throw std::invalid_argument("coverage: minutes_per_tick must be positive");
    }

    long max_ticks_resolved() const {
        if (cfg_.max_ticks != 0) return cfg_.max_ticks;
        return static_cast<long>(truth_.rows()) * truth_.cols() * 50;
    }

    SenseOptions sense_opts() const {
        return SenseOptions{cfg_.mode == ScenarioMode::ThreeState};
    }

    void sense_here() { sense(st_.map, truth_, st_.pose, cfg_.sensor_radius, sense_opts()); }

    void enter_cell(GridPos p) {
        st_.trajectory.push_back(p);
        auto& flag = entered_[st_.map.index(p)];
        if (flag) ++revisits_;
        flag = 1;
    }

    bool target_still_candidate() const {
        return st_.target && detail::is_candidate(st_.map, st_.map.index(*st_.target), cfg_.mode);
    }

    void plan_to_target() {
        const PlanResult res = plan(current_planner(), st_.map, st_.pose, *st_.target, cfg_.policy);
        if (res.found()) {
            st_.path = res.path->cells;
            st_.path_next = 1;
        } else {
            st_.target.reset();
            st_.path.clear();
            st_.path_next = 0;
        }
    }

    // Obstacle-triggered replan: count it, optionally switch planner, and try
    // the current target again; drop the target if it is gone or unreachable.
    void replan() {
        ++st_.replans;
        if (cfg_.switch_on_replan) {
            st_.planner_index = (st_.planner_index + 1) % 3;
            ++st_.planner_switches;
        }
        st_.path.clear();
        st_.path_next = 0;
        if (target_still_candidate()) {
            plan_to_target();
        } else {
            st_.target.reset();
        }
    }

    bool remaining_path_ok() const {
        for (std::size_t i = st_.path_next; i < st_.path.size(); ++i) {
            const GridPos a = st_.path[i - 1];
            const GridPos b = st_.path[i];
            if (!is_passable(st_.map, b, cfg_.policy)) return false;
            const int dr = b.row - a.row;
            const int dc = b.col - a.col;
            if (dr != 0 && dc != 0 && detail::corner_cut(st_.map, a, dr, dc)) return false;
        }
        return true;
    }

    CoverEvent advance() {
        const GridPos q = st_.path[st_.path_next];
        // Contact sensing of the next cell: with radius 0 the destination may
        // still be unknown, and the robot must never enter an obstacle.
        if (!st_.map.cell_sensed(q)) sense(st_.map, truth_, q, 0, sense_opts());
        if (!is_passable(st_.map, q, cfg_.policy)) {
            replan();
            return CoverEvent::Replanned;
        }
        const bool diagonal = q.row != st_.pose.row && q.col != st_.pose.col;
        const GridPos prev = st_.pose;
        st_.pose = q;
        ++st_.path_next;
        ++st_.ticks;
        st_.path_length += diagonal ? kDiagonalStep : 1.0;
        enter_cell(q);
        if (cfg_.tick_per_turn) {
            const std::size_t n = st_.trajectory.size();
            if (n >= 3) {
                const GridPos& a = st_.trajectory[n - 3];
                if (q.row - prev.row != prev.row - a.row || q.col - prev.col != prev.col - a.col)
                    ++st_.ticks;
            }
        }
        sense_here();
        mark_covered(st_.map, st_.pose);
        if (st_.target && st_.pose == *st_.target) {
            st_.target.reset();
            st_.path.clear();
            st_.path_next = 0;
        } else if (!remaining_path_ok()) {
            st_.path_invalid = true;
        }
        if (st_.ticks >= max_ticks_resolved()) {
            st_.done = true;
            // Exhausted exactly at the finish line still counts as complete.
            st_.complete = !next_target(st_.map, st_.pose, cfg_.mode, cfg_.policy).has_value();
        }
        return CoverEvent::Moved;
    }

    GroundTruthField truth_;
    CoverageConfig cfg_;
    EngineState st_;
    std::vector<std::uint8_t> entered_;
    long revisits_ = 0;
};

// Full coverage run from a fresh belief map.
inline CoverageReport run_coverage(const GroundTruthField& truth, GridPos start,
                                   const CoverageConfig& cfg) {
    CoverageEngine engine(truth, new_belief_map(truth.rows(), truth.cols(), truth.k), start, cfg);
    while (!engine.done()) engine.step();
    return engine.report();
}

}  // namespace coverforge
