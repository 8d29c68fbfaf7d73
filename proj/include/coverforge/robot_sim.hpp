#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coverforge/coverage.hpp"
#include "coverforge/field_gen.hpp"
#include "coverforge/grid.hpp"
#include "coverforge/rng.hpp"

// Robot operation state machine around the coverage loop. A robot new to the
// field first runs a bounded mapping pass (a perimeter sensing sweep), then a
// map conversion, then coverage; a robot with a known map starts covering
// directly. The whole simulator state is checkpointable to a line-oriented
// text format, and restoring a checkpoint resumes through a Recovering state
// to exactly the run the uninterrupted simulator would have produced.

namespace coverforge {

enum class OpState : std::uint8_t {
    Idle,
    MappingLocalization,
    MapConversion,
    Covering,
    Recovering,
    Complete
};

enum class SimEvent : std::uint8_t { StateChanged, Moved, Sensed, Replanned, Completed };

inline const char* to_string(OpState s) {
    switch (s) {
        case OpState::Idle: return "idle";
        case OpState::MappingLocalization: return "mapping";
        case OpState::MapConversion: return "map_conversion";
        case OpState::Covering: return "covering";
        case OpState::Recovering: return "recovering";
        case OpState::Complete: return "complete";
    }
    return "?";
}

inline const char* to_string(SimEvent e) {
    switch (e) {
        case SimEvent::StateChanged: return "state_changed";
        case SimEvent::Moved: return "moved";
        case SimEvent::Sensed: return "sensed";
        case SimEvent::Replanned: return "replanned";
        case SimEvent::Completed: return "completed";
    }
    return "?";
}

class CheckpointError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kCheckpointFormatVersion = 1;

struct SimCheckpoint {
    int format_version = kCheckpointFormatVersion;
    OpState op_state = OpState::Idle;
    std::uint64_t rng_state = 0;
    std::uint64_t config_digest = 0;
    int mapping_index = 0;
    EngineState engine;
    friend bool operator==(const SimCheckpoint&, const SimCheckpoint&) = default;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (const char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Shortest exact decimal representation; from_chars restores the bit pattern.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline const char* to_string(Heuristic h) {
    switch (h) {
        case Heuristic::Euclidean: return "euclidean";
        case Heuristic::Manhattan: return "manhattan";
        case Heuristic::Chebyshev: return "chebyshev";
    }
    return "?";
}

inline std::string canonical_config(const CoverageConfig& cfg) {
    std::string s;
    s += "mode=";
    s += coverforge::to_string(cfg.mode);
    s += ";planner=";
    s += coverforge::to_string(cfg.planner);
    s += ";connectivity=";
    s += std::to_string(static_cast<int>(cfg.policy.connectivity));
    s += ";unknown_passable=";
    s += cfg.policy.unknown_passable ? "1" : "0";
    s += ";partial_cost_factor=";
    s += format_double(cfg.policy.partial_cost_factor);
    s += ";heuristic=";
    s += to_string(cfg.policy.heuristic);
    s += ";sensor_radius=";
    s += std::to_string(cfg.sensor_radius);
    s += ";switch_on_replan=";
    s += cfg.switch_on_replan ? "1" : "0";
    s += ";max_ticks=";
    s += std::to_string(cfg.max_ticks);
    s += ";minutes_per_tick=";
    s += format_double(cfg.minutes_per_tick);
    s += ";tick_per_turn=";
    s += cfg.tick_per_turn ? "1" : "0";
    return s;
}

}  // namespace detail

// Digest binding a checkpoint to its run configuration and field.
inline std::uint64_t config_digest(const CoverageConfig& cfg, const GroundTruthField& truth) {
    std::uint64_t h = detail::fnv1a(detail::canonical_config(cfg));
    h = detail::fnv1a(std::to_string(truth.rows_fine) + "x" + std::to_string(truth.cols_fine) +
                          "/" + std::to_string(truth.k),
                      h);
    h = detail::fnv1a(
        std::string_view(reinterpret_cast<const char*>(truth.blocked.data()), truth.blocked.size()),
        h);
    return h;
}

// Scenario-1 map conversion: partial classifications collapse to obstacles.
inline void convert_for_mode(GridMap& map, ScenarioMode mode) {
    if (mode != ScenarioMode::ThreeState) return;
    for (const auto& [idx, mask] : map.partial_masks) map.state[idx] = CellState::Obstacle;
    map.partial_masks.clear();
    map.covered_sub.clear();
}

class Simulator {
public:
    // New-field entry when known_map is absent (mapping pass first), known-field
    // entry otherwise (map conversion applied to the supplied map, covering
    // starts immediately).
    Simulator(const GroundTruthField& truth, GridPos start, const CoverageConfig& cfg,
              std::optional<GridMap> known_map = std::nullopt)
        : truth_(truth), cfg_(cfg), start_(start) {
        validate_start();
        build_perimeter();
        if (known_map) {
            check_consistent(*known_map, truth_);
            convert_for_mode(*known_map, cfg_.mode);
            engine_.emplace(truth_, std::move(*known_map), start_, cfg_);
            op_state_ = OpState::Covering;
        } else {
            belief_ = new_belief_map(truth_.rows(), truth_.cols(), truth_.k);
            op_state_ = OpState::MappingLocalization;
        }
    }

    SimEvent step() {
        switch (op_state_) {
            case OpState::MappingLocalization: {
                if (mapping_index_ < static_cast<int>(perimeter_.size())) {
                    sense(belief_, truth_, perimeter_[mapping_index_], cfg_.sensor_radius,
                          sense_opts());
                    ++mapping_index_;
                    return SimEvent::Sensed;
                }
                op_state_ = OpState::MapConversion;
                return SimEvent::StateChanged;
            }
            case OpState::MapConversion: {
                convert_for_mode(belief_, cfg_.mode);
                engine_.emplace(truth_, std::exchange(belief_, GridMap{}), start_, cfg_);
                op_state_ = OpState::Covering;
                return SimEvent::StateChanged;
            }
            case OpState::Covering: {
                if (engine_->done()) {
                    op_state_ = OpState::Complete;
                    return SimEvent::Completed;
                }
                switch (engine_->step()) {
                    case CoverEvent::Sensed: return SimEvent::Sensed;
                    case CoverEvent::Moved: return SimEvent::Moved;
                    case CoverEvent::Replanned: return SimEvent::Replanned;
                    case CoverEvent::Done:
                        op_state_ = OpState::Complete;
                        return SimEvent::Completed;
                }
                throw std::logic_error("unreachable");
            }
            case OpState::Recovering:
                op_state_ = resume_state_;
                return SimEvent::StateChanged;
            case OpState::Idle:
            case OpState::Complete:
                throw std::logic_error("step on a completed simulator");
        }
        throw std::logic_error("unreachable");
    }

    OpState op_state() const { return op_state_; }
    bool complete() const { return op_state_ == OpState::Complete; }
    GridPos pose() const { return engine_ ? engine_->state().pose : start_; }
    const GridMap& belief() const { return engine_ ? engine_->state().map : belief_; }
    int mapping_steps_done() const { return mapping_index_; }
    std::size_t mapping_pass_length() const { return perimeter_.size(); }

    CoverageReport report() const {
        if (engine_) return engine_->report();
        CoverageReport r;
        r.coverage_percent = coverage_percent(belief_, truth_);
        r.partial_cells_identified = state_counts(belief_).partial;
        return r;
    }

    SimCheckpoint checkpoint() const {
        SimCheckpoint ck;
        ck.op_state = op_state_ == OpState::Recovering ? resume_state_ : op_state_;
        ck.rng_state = rng_.state;
        ck.config_digest = config_digest(cfg_, truth_);
        ck.mapping_index = mapping_index_;
        if (engine_) {
            ck.engine = engine_->state();
        } else {
            ck.engine.map = belief_;
            ck.engine.pose = start_;
        }
        return ck;
    }

    static Simulator restore(const SimCheckpoint& ck, const GroundTruthField& truth,
                             const CoverageConfig& cfg) {
        if (ck.format_version != kCheckpointFormatVersion)
            throw CheckpointError("incompatible checkpoint: format_version " +
                                  std::to_string(ck.format_version) + ", expected " +
                                  std::to_string(kCheckpointFormatVersion));
        if (ck.config_digest != config_digest(cfg, truth))
            throw CheckpointError("incompatible checkpoint: config digest mismatch");
        Simulator sim(RestoreTag{}, truth, cfg);
        sim.rng_.state = ck.rng_state;
        sim.mapping_index_ = ck.mapping_index;
        switch (ck.op_state) {
            case OpState::MappingLocalization:
            case OpState::MapConversion:
                // Resuming at MapConversion re-enters the (idempotent) mapping
                // exit; Recovering may only hand over to Mapping or Covering.
                sim.belief_ = ck.engine.map;
                sim.start_ = ck.engine.pose;
                sim.op_state_ = OpState::Recovering;
                sim.resume_state_ = OpState::MappingLocalization;
                break;
            case OpState::Covering:
                sim.engine_.emplace(truth, cfg, ck.engine);
                sim.start_ = ck.engine.trajectory.empty() ? ck.engine.pose
                                                          : ck.engine.trajectory.front();
                sim.op_state_ = OpState::Recovering;
                sim.resume_state_ = OpState::Covering;
                break;
            case OpState::Complete:
                sim.engine_.emplace(truth, cfg, ck.engine);
                sim.op_state_ = OpState::Complete;
                break;
            default:
                throw CheckpointError("incompatible checkpoint: bad op_state");
        }
        return sim;
    }

private:
    struct RestoreTag {};
    Simulator(RestoreTag, const GroundTruthField& truth, const CoverageConfig& cfg)
        : truth_(truth), cfg_(cfg) {
        build_perimeter();
    }

    void validate_start() {
        if (start_.row < 0 || start_.row >= truth_.rows() || start_.col < 0 ||
            start_.col >= truth_.cols())
            throw std::out_of_range("simulator: start out of bounds");
        const CellClass cls = classify_coarse_cell(truth_, start_);
        if (cls.is_obstacle() || (cls.is_partial() && cfg_.mode == ScenarioMode::ThreeState))
            throw std::invalid_argument("simulator: start cell is blocked");
    }

    SenseOptions sense_opts() const {
        return SenseOptions{cfg_.mode == ScenarioMode::ThreeState};
    }

    void build_perimeter() {
        const int rows = truth_.rows();
        const int cols = truth_.cols();
        for (int c = 0; c < cols; ++c) perimeter_.push_back({0, c});
        for (int r = 1; r < rows; ++r) perimeter_.push_back({r, cols - 1});
        if (rows > 1)
            for (int c = cols - 2; c >= 0; --c) perimeter_.push_back({rows - 1, c});
        if (cols > 1)
            for (int r = rows - 2; r > 0; --r) perimeter_.push_back({r, 0});
    }

    GroundTruthField truth_;
    CoverageConfig cfg_;
    GridPos start_{};
    OpState op_state_ = OpState::Idle;
    OpState resume_state_ = OpState::Covering;
    int mapping_index_ = 0;
    std::vector<GridPos> perimeter_;
    GridMap belief_;
    std::optional<CoverageEngine> engine_;
    SplitMix64 rng_{0};  // reserved for stochastic extensions; checkpointed
};

inline Simulator init_sim(const GroundTruthField& truth, GridPos start, const CoverageConfig& cfg,
                          std::optional<GridMap> known_map = std::nullopt) {
    return Simulator(truth, start, cfg, std::move(known_map));
}

// ---------------------------------------------------------------------------
// Checkpoint text format. Line-oriented key=value pairs in a fixed order,
// then the belief snapshot after a `---map---` sentinel (header
// `belief <k> <rows> <cols>`, one row per line: '.' unexplored, 'u' sensed
// free, 'o' covered, '#' obstacle, 'p' partial), then per-partial-cell
// sub-masks after `---masks---` as `row,col <blocked-hex> <covered-hex>`.

namespace detail {

inline constexpr char kHexDigits[] = "0123456789abcdef";

inline std::string mask_to_hex(const SubMask& m) {
    const std::size_t nibbles = (m.size() + 3) / 4;
    std::string out(nibbles, '0');
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        const std::size_t pos = i / 4;
        const int bit = 3 - static_cast<int>(i % 4);
        int v = out[pos] <= '9' ? out[pos] - '0' : out[pos] - 'a' + 10;
        v |= 1 << bit;
        out[pos] = kHexDigits[v];
    }
    return out;
}

inline SubMask mask_from_hex(std::string_view hex, std::size_t bits, int line) {
    if (hex.size() != (bits + 3) / 4)
        throw CheckpointError("line " + std::to_string(line) + ": bad mask length");
    SubMask m(bits, 0);
    for (std::size_t i = 0; i < bits; ++i) {
        const char c = hex[i / 4];
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else
            throw CheckpointError("line " + std::to_string(line) + ": bad hex digit");
        m[i] = (v >> (3 - static_cast<int>(i % 4))) & 1;
    }
    return m;
}

inline std::string pos_to_string(GridPos p) {
    return std::to_string(p.row) + "," + std::to_string(p.col);
}

inline std::string pos_list_to_string(const std::vector<GridPos>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out.push_back(';');
        out += pos_to_string(v[i]);
    }
    return out;
}

inline std::string u64_to_hex(std::uint64_t v) {
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = kHexDigits[v & 0xF];
        v >>= 4;
    }
    return out;
}

struct CheckpointReader {
    std::vector<std::string_view> lines;
    std::size_t idx = 0;

    explicit CheckpointReader(std::string_view text) : lines(split_lines(text)) {}

    int line_no() const { return static_cast<int>(idx) + 1; }

    std::string_view next() {
        if (idx >= lines.size())
            throw CheckpointError("line " + std::to_string(line_no()) + ": unexpected end");
        return lines[idx++];
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw CheckpointError("line " + std::to_string(static_cast<int>(idx)) + ": " + what);
    }

    std::string_view value(std::string_view key) {
        const std::string_view line = next();
        if (line.size() < key.size() + 1 || line.substr(0, key.size()) != key ||
            line[key.size()] != '=')
            fail("expected '" + std::string(key) + "='");
        return line.substr(key.size() + 1);
    }

    long integer(std::string_view key) {
        const std::string_view v = value(key);
        long out = 0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
        if (res.ec != std::errc() || res.ptr != v.data() + v.size()) fail("bad integer");
        return out;
    }

    std::uint64_t hex64(std::string_view key) {
        const std::string_view v = value(key);
        std::uint64_t out = 0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), out, 16);
        if (res.ec != std::errc() || res.ptr != v.data() + v.size() || v.size() != 16)
            fail("bad hex value");
        return out;
    }

    double real(std::string_view key) {
        const std::string_view v = value(key);
        double out = 0;
        const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
        if (res.ec != std::errc() || res.ptr != v.data() + v.size()) fail("bad real");
        return out;
    }

    bool boolean(std::string_view key) {
        const std::string_view v = value(key);
        if (v == "1") return true;
        if (v == "0") return false;
        fail("bad boolean");
    }

    GridPos pos_from(std::string_view v) {
        const std::size_t comma = v.find(',');
        int r = 0, c = 0;
        if (comma == std::string_view::npos || !parse_int(v.substr(0, comma), r) ||
            !parse_int(v.substr(comma + 1), c))
            fail("bad position");
        return {r, c};
    }

    std::vector<GridPos> pos_list(std::string_view key) {
        const std::string_view v = value(key);
        std::vector<GridPos> out;
        std::size_t start = 0;
        if (v.empty()) return out;
        while (start <= v.size()) {
            std::size_t end = v.find(';', start);
            if (end == std::string_view::npos) end = v.size();
            out.push_back(pos_from(v.substr(start, end - start)));
            start = end + 1;
        }
        return out;
    }
};

inline OpState op_state_from(std::string_view s, const CheckpointReader& r) {
    if (s == "idle") return OpState::Idle;
    if (s == "mapping") return OpState::MappingLocalization;
    if (s == "map_conversion") return OpState::MapConversion;
    if (s == "covering") return OpState::Covering;
    if (s == "complete") return OpState::Complete;
    r.fail("unknown op_state '" + std::string(s) + "'");
}

}  // namespace detail

inline std::string serialize_checkpoint(const SimCheckpoint& ck) {
    using detail::format_double;
    using detail::pos_list_to_string;
    using detail::pos_to_string;
    const EngineState& e = ck.engine;
    std::string out;
    out += "format_version=" + std::to_string(ck.format_version) + "\n";
    out += std::string("op_state=") + to_string(ck.op_state) + "\n";
    out += "rng_state=" + std::to_string(ck.rng_state) + "\n";
    out += "config_digest=" + detail::u64_to_hex(ck.config_digest) + "\n";
    out += "mapping_index=" + std::to_string(ck.mapping_index) + "\n";
    out += "pose=" + pos_to_string(e.pose) + "\n";
    out += "ticks=" + std::to_string(e.ticks) + "\n";
    out += "replans=" + std::to_string(e.replans) + "\n";
    out += "planner_switches=" + std::to_string(e.planner_switches) + "\n";
    out += "path_length=" + format_double(e.path_length) + "\n";
    out += "planner_index=" + std::to_string(e.planner_index) + "\n";
    out += std::string("initial_sensed=") + (e.initial_sensed ? "1" : "0") + "\n";
    out += std::string("path_invalid=") + (e.path_invalid ? "1" : "0") + "\n";
    out += std::string("done=") + (e.done ? "1" : "0") + "\n";
    out += std::string("complete=") + (e.complete ? "1" : "0") + "\n";
    out += "target=" + (e.target ? pos_to_string(*e.target) : std::string()) + "\n";
    out += "path_next=" + std::to_string(e.path_next) + "\n";
    out += "path=" + pos_list_to_string(e.path) + "\n";
    out += "trajectory=" + pos_list_to_string(e.trajectory) + "\n";
    out += "---map---\n";
    out += "belief " + std::to_string(e.map.k) + " " + std::to_string(e.map.rows) + " " +
           std::to_string(e.map.cols) + "\n";
    for (int r = 0; r < e.map.rows; ++r) {
        for (int c = 0; c < e.map.cols; ++c) {
            const int idx = r * e.map.cols + c;
            char ch = '.';
            switch (e.map.state[idx]) {
                case CellState::Unexplored: ch = e.map.sensed[idx] ? 'u' : '.'; break;
                case CellState::Covered: ch = 'o'; break;
                case CellState::Obstacle: ch = '#'; break;
                case CellState::PartialObstacle: ch = 'p'; break;
            }
            out.push_back(ch);
        }
        out.push_back('\n');
    }
    out += "---masks---\n";
    for (const auto& [idx, mask] : e.map.partial_masks) {
        const auto cit = e.map.covered_sub.find(idx);
        const SubMask covered =
            cit == e.map.covered_sub.end() ? SubMask(mask.size(), 0) : cit->second;
        out += std::to_string(idx / e.map.cols) + "," + std::to_string(idx % e.map.cols) + " " +
               detail::mask_to_hex(mask) + " " + detail::mask_to_hex(covered) + "\n";
    }
    return out;
}

inline SimCheckpoint parse_checkpoint(std::string_view text) {
    detail::CheckpointReader r(text);
    SimCheckpoint ck;
    ck.format_version = static_cast<int>(r.integer("format_version"));
    ck.op_state = detail::op_state_from(r.value("op_state"), r);
    {
        const std::string_view v = r.value("rng_state");
        const auto res = std::from_chars(v.data(), v.data() + v.size(), ck.rng_state);
        if (res.ec != std::errc() || res.ptr != v.data() + v.size()) r.fail("bad rng_state");
    }
    ck.config_digest = r.hex64("config_digest");
    ck.mapping_index = static_cast<int>(r.integer("mapping_index"));
    EngineState& e = ck.engine;
    e.pose = r.pos_from(r.value("pose"));
    e.ticks = r.integer("ticks");
    e.replans = r.integer("replans");
    e.planner_switches = r.integer("planner_switches");
    e.path_length = r.real("path_length");
    e.planner_index = static_cast<int>(r.integer("planner_index"));
    if (e.planner_index < 0 || e.planner_index > 2) r.fail("planner_index out of range");
    e.initial_sensed = r.boolean("initial_sensed");
    e.path_invalid = r.boolean("path_invalid");
    e.done = r.boolean("done");
    e.complete = r.boolean("complete");
    {
        const std::string_view v = r.value("target");
        if (!v.empty()) e.target = r.pos_from(v);
    }
    e.path_next = static_cast<std::size_t>(r.integer("path_next"));
    e.path = r.pos_list("path");
    e.trajectory = r.pos_list("trajectory");
    if (r.next() != "---map---") r.fail("expected ---map--- sentinel");
    {
        const auto header = detail::split_ws(r.next());
        int k = 0, rows = 0, cols = 0;
        if (header.size() != 4 || header[0] != "belief" || !detail::parse_int(header[1], k) ||
            !detail::parse_int(header[2], rows) || !detail::parse_int(header[3], cols) || k < 1 ||
            rows < 1 || cols < 1)
            r.fail("malformed belief header");
        e.map = new_belief_map(rows, cols, k);
        for (int row = 0; row < rows; ++row) {
            const std::string_view line = r.next();
            if (static_cast<int>(line.size()) != cols) r.fail("ragged belief row");
            for (int col = 0; col < cols; ++col) {
                const int idx = row * cols + col;
                switch (line[col]) {
                    case '.': break;
                    case 'u': e.map.sensed[idx] = 1; break;
                    case 'o':
                        e.map.state[idx] = CellState::Covered;
                        e.map.sensed[idx] = 1;
                        break;
                    case '#':
                        e.map.state[idx] = CellState::Obstacle;
                        e.map.sensed[idx] = 1;
                        break;
                    case 'p':
                        e.map.state[idx] = CellState::PartialObstacle;
                        e.map.sensed[idx] = 1;
                        break;
                    default: r.fail("illegal belief character");
                }
            }
        }
    }
    if (r.next() != "---masks---") r.fail("expected ---masks--- sentinel");
    const std::size_t bits = static_cast<std::size_t>(e.map.k) * e.map.k;
    while (r.idx < r.lines.size()) {
        const std::string_view line = r.next();
        const auto toks = detail::split_ws(line);
        if (toks.size() != 3) r.fail("malformed mask line");
        const GridPos p = r.pos_from(toks[0]);
        if (!e.map.in_bounds(p)) r.fail("mask position out of bounds");
        const int idx = e.map.index(p);
        if (e.map.state[idx] != CellState::PartialObstacle)
            r.fail("mask for a non-partial cell");
        SubMask blocked = detail::mask_from_hex(toks[1], bits, r.line_no() - 1);
        const int blocked_count = mask_count(blocked);
        if (blocked_count == 0 || blocked_count == static_cast<int>(bits))
            r.fail("partial mask must mix blocked and free sub-cells");
        SubMask covered = detail::mask_from_hex(toks[2], bits, r.line_no() - 1);
        for (std::size_t i = 0; i < bits; ++i)
            if (covered[i] && blocked[i]) r.fail("covered sub-cell overlaps a blocked one");
        e.map.partial_masks[idx] = std::move(blocked);
        if (mask_count(covered) > 0) e.map.covered_sub[idx] = std::move(covered);
    }
    for (int idx = 0; idx < e.map.rows * e.map.cols; ++idx)
        if (e.map.state[idx] == CellState::PartialObstacle && !e.map.partial_masks.count(idx))
            throw CheckpointError("partial cell without a mask entry");
    const auto check_bounds = [&](GridPos p, const char* what) {
        if (!e.map.in_bounds(p))
            throw CheckpointError(std::string(what) + " position out of bounds");
    };
    check_bounds(e.pose, "pose");
    if (e.target) check_bounds(*e.target, "target");
    for (const GridPos& p : e.path) check_bounds(p, "path");
    for (const GridPos& p : e.trajectory) check_bounds(p, "trajectory");
    return ck;
}

inline SimCheckpoint load_checkpoint(const std::string& path) {
    return parse_checkpoint(read_text_file(path));
}

inline void save_checkpoint(const SimCheckpoint& ck, const std::string& path) {
    write_text_file(path, serialize_checkpoint(ck));
}

}  // namespace coverforge
