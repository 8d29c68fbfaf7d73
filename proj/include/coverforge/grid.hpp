#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Two-resolution world model: a fine obstacle grid (the ground truth the
// simulator hides from the robot) and the robot's coarse belief map. Each
// coarse cell aggregates a k-by-k block of fine cells and is classified as
// unexplored, covered, obstacle or partial obstacle; partial cells keep the
// blocked sub-pattern as a k*k mask so the free area next to an obstacle can
// still be covered.

namespace coverforge {

// Coarse-cell coordinates, row-major, origin at the top-left corner.
struct GridPos {
    int row = 0;
    int col = 0;
};

constexpr bool operator==(GridPos a, GridPos b) { return a.row == b.row && a.col == b.col; }
constexpr bool operator!=(GridPos a, GridPos b) { return !(a == b); }
// Row-major ordering; every deterministic tie-break in the library uses it.
constexpr bool operator<(GridPos a, GridPos b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
}

enum class CellState : std::uint8_t { Unexplored, Covered, Obstacle, PartialObstacle };

// k*k boolean sub-grid, row-major.
using SubMask = std::vector<std::uint8_t>;

inline int mask_count(const SubMask& m) {
    int n = 0;
    for (std::uint8_t b : m) n += b ? 1 : 0;
    return n;
}

// Result of classifying one coarse cell against the ground truth.
struct CellClass {
    enum class Kind : std::uint8_t { Free, Obstacle, Partial };
    Kind kind = Kind::Free;
    SubMask mask;  // blocked sub-cells, populated for Partial only

    bool is_free() const { return kind == Kind::Free; }
    bool is_obstacle() const { return kind == Kind::Obstacle; }
    bool is_partial() const { return kind == Kind::Partial; }
    friend bool operator==(const CellClass&, const CellClass&) = default;
};

// Fine-resolution obstacle grid. rows_fine and cols_fine are exact multiples
// of the subdivision factor k, so the coarse grid is (rows_fine/k) by
// (cols_fine/k).
struct GroundTruthField {
    int rows_fine = 0;
    int cols_fine = 0;
    int k = 1;
    std::vector<std::uint8_t> blocked;  // rows_fine * cols_fine, 1 = obstacle

    int rows() const { return rows_fine / k; }
    int cols() const { return cols_fine / k; }
    bool at(int fr, int fc) const {
        return blocked[static_cast<std::size_t>(fr) * cols_fine + fc] != 0;
    }
    void set(int fr, int fc, bool v) {
        blocked[static_cast<std::size_t>(fr) * cols_fine + fc] = v ? 1 : 0;
    }
    long free_fine_cells() const {
        long n = 0;
        for (std::uint8_t b : blocked) n += b ? 0 : 1;
        return n;
    }
    long blocked_fine_cells() const {
        return static_cast<long>(blocked.size()) - free_fine_cells();
    }
    friend bool operator==(const GroundTruthField&, const GroundTruthField&) = default;
};

inline GroundTruthField make_field(int rows_fine, int cols_fine, int k) {
    if (rows_fine < 1 || cols_fine < 1 || k < 1)
        throw std::invalid_argument("field dimensions and k must be positive");
    if (rows_fine % k != 0 || cols_fine % k != 0)
        throw std::invalid_argument("fine dimensions must be exact multiples of k");
    GroundTruthField f;
    f.rows_fine = rows_fine;
    f.cols_fine = cols_fine;
    f.k = k;
    f.blocked.assign(static_cast<std::size_t>(rows_fine) * cols_fine, 0);
    return f;
}

// Convenience: coarse dimensions in, fine grid out.
inline GroundTruthField make_field_coarse(int rows, int cols, int k) {
    if (rows < 1 || cols < 1 || k < 1)
        throw std::invalid_argument("field dimensions and k must be positive");
    return make_field(rows * k, cols * k, k);
}

// The robot's belief about the field. `sensed` tracks which coarse cells a
// sensor sweep has observed; knowledge of free space is kept there rather
// than in a fifth cell state. partial_masks / covered_sub are keyed by the
// row-major cell index and exist only for PartialObstacle cells.
struct GridMap {
    int rows = 0;
    int cols = 0;
    int k = 1;
    std::vector<CellState> state;
    std::vector<std::uint8_t> sensed;
    std::map<int, SubMask> partial_masks;  // 1 = blocked sub-cell
    std::map<int, SubMask> covered_sub;    // 1 = covered free sub-cell

    int index(GridPos p) const { return p.row * cols + p.col; }
    bool in_bounds(GridPos p) const {
        return p.row >= 0 && p.row < rows && p.col >= 0 && p.col < cols;
    }
    CellState cell_state(GridPos p) const { return state[index(p)]; }
    bool cell_sensed(GridPos p) const { return sensed[index(p)] != 0; }
    friend bool operator==(const GridMap&, const GridMap&) = default;
};

inline GridMap new_belief_map(int rows, int cols, int k) {
    if (rows < 1 || cols < 1 || k < 1)
        throw std::invalid_argument("belief map dimensions and k must be positive");
    GridMap m;
    m.rows = rows;
    m.cols = cols;
    m.k = k;
    m.state.assign(static_cast<std::size_t>(rows) * cols, CellState::Unexplored);
    m.sensed.assign(static_cast<std::size_t>(rows) * cols, 0);
    return m;
}

inline void check_consistent(const GridMap& map, const GroundTruthField& truth) {
    if (map.rows != truth.rows() || map.cols != truth.cols() || map.k != truth.k)
        throw std::invalid_argument("belief map and field dimensions do not match");
}

// Pure classification of the k*k block under coarse cell p.
inline CellClass classify_coarse_cell(const GroundTruthField& truth, GridPos p) {
    if (p.row < 0 || p.row >= truth.rows() || p.col < 0 || p.col >= truth.cols())
        throw std::out_of_range("classify_coarse_cell: position out of bounds");
    const int k = truth.k;
    SubMask mask(static_cast<std::size_t>(k) * k, 0);
    int blocked = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (truth.at(p.row * k + i, p.col * k + j)) {
                mask[static_cast<std::size_t>(i) * k + j] = 1;
                ++blocked;
            }
        }
    }
    if (blocked == 0) return {CellClass::Kind::Free, {}};
    if (blocked == k * k) return {CellClass::Kind::Obstacle, {}};
    return {CellClass::Kind::Partial, std::move(mask)};
}

struct SenseOptions {
    // Scenario-1 sensing: record partial classifications as plain obstacles,
    // so the belief map never holds a PartialObstacle cell.
    bool partial_as_obstacle = false;
};

struct SenseResult {
    GridPos pos;
    CellClass cls;
};

// Reveal every not-yet-sensed cell within a Chebyshev ball of `radius` around
// `pose`. Obstacle and partial classifications are recorded in the map; free
// cells stay Unexplored (they become Covered only by being visited). Returns
// the newly sensed cells with their classification.
inline std::vector<SenseResult> sense(GridMap& map, const GroundTruthField& truth, GridPos pose,
                                      int radius, SenseOptions opts = {}) {
    check_consistent(map, truth);
    if (!map.in_bounds(pose)) throw std::out_of_range("sense: pose out of bounds");
    if (radius < 0) throw std::invalid_argument("sense: radius must be non-negative");

    std::vector<SenseResult> revealed;
    const int r0 = std::max(0, pose.row - radius);
    const int r1 = std::min(map.rows - 1, pose.row + radius);
    const int c0 = std::max(0, pose.col - radius);
    const int c1 = std::min(map.cols - 1, pose.col + radius);
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            GridPos q{r, c};
            const int idx = map.index(q);
            if (map.sensed[idx]) continue;
            map.sensed[idx] = 1;
            CellClass cls = classify_coarse_cell(truth, q);
            switch (cls.kind) {
                case CellClass::Kind::Obstacle:
                    map.state[idx] = CellState::Obstacle;
                    break;
                case CellClass::Kind::Partial:
                    if (opts.partial_as_obstacle) {
                        map.state[idx] = CellState::Obstacle;
                    } else {
                        map.state[idx] = CellState::PartialObstacle;
                        map.partial_masks[idx] = cls.mask;
                    }
                    break;
                case CellClass::Kind::Free:
                    break;  // stays Unexplored
            }
            revealed.push_back({q, std::move(cls)});
        }
    }
    return revealed;
}

// Belief with every cell already classified, as a robot that has fully
// interpreted the field would hold it.
inline GridMap fully_sensed_belief(const GroundTruthField& truth, SenseOptions opts = {}) {
    GridMap m = new_belief_map(truth.rows(), truth.cols(), truth.k);
    sense(m, truth, {0, 0}, truth.rows() + truth.cols(), opts);
    return m;
}

// Mark the cell under the robot as covered. Unexplored cells become Covered;
// for a PartialObstacle cell all of its free sub-cells are recorded at once
// (the robot is smaller than the cell by construction, so no sub-cell path is
// modelled). Idempotent on Covered cells.
inline void mark_covered(GridMap& map, GridPos p) {
    if (!map.in_bounds(p)) throw std::out_of_range("mark_covered: position out of bounds");
    const int idx = map.index(p);
    switch (map.state[idx]) {
        case CellState::Obstacle:
            throw std::invalid_argument("mark_covered: cell is an obstacle");
        case CellState::Covered:
            return;
        case CellState::Unexplored:
            map.state[idx] = CellState::Covered;
            map.sensed[idx] = 1;  // occupying a cell observes it
            return;
        case CellState::PartialObstacle: {
            const SubMask& blocked = map.partial_masks.at(idx);
            SubMask cov(blocked.size());
            for (std::size_t i = 0; i < blocked.size(); ++i) cov[i] = blocked[i] ? 0 : 1;
            map.covered_sub[idx] = std::move(cov);
            return;
        }
    }
}

// Fraction of free fine sub-cells that have been covered, in percent. A
// Covered coarse cell contributes all of its free sub-cells, a partial cell
// contributes its covered_sub count. 100 when the field has no free space.
inline double coverage_percent(const GridMap& map, const GroundTruthField& truth) {
    check_consistent(map, truth);
    const long total_free = truth.free_fine_cells();
    if (total_free == 0) return 100.0;
    const int k = map.k;
    long covered = 0;
    for (int r = 0; r < map.rows; ++r) {
        for (int c = 0; c < map.cols; ++c) {
            const int idx = r * map.cols + c;
            if (map.state[idx] == CellState::Covered) {
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        if (!truth.at(r * k + i, c * k + j)) ++covered;
            } else if (map.state[idx] == CellState::PartialObstacle) {
                auto it = map.covered_sub.find(idx);
                if (it != map.covered_sub.end()) covered += mask_count(it->second);
            }
        }
    }
    if (covered == total_free) return 100.0;
    return 100.0 * static_cast<double>(covered) / static_cast<double>(total_free);
}

struct StateCounts {
    long unexplored = 0;
    long covered = 0;
    long obstacle = 0;
    long partial = 0;
    long total() const { return unexplored + covered + obstacle + partial; }
    friend bool operator==(const StateCounts&, const StateCounts&) = default;
};

inline StateCounts state_counts(const GridMap& map) {
    StateCounts c;
    for (CellState s : map.state) {
        switch (s) {
            case CellState::Unexplored: ++c.unexplored; break;
            case CellState::Covered: ++c.covered; break;
            case CellState::Obstacle: ++c.obstacle; break;
            case CellState::PartialObstacle: ++c.partial; break;
        }
    }
    return c;
}

}  // namespace coverforge
