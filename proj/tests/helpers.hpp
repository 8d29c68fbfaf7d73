#pragma once

// Shared test fixtures and independent oracles. The oracles (plain BFS /
// flood fill) deliberately avoid the library's search code so they can act
// as ground truth for it.

#include <queue>
#include <string>
#include <vector>

#include "coverforge/grid.hpp"

namespace testutil {

using namespace coverforge;

// Build a fine grid from ASCII art rows ('#' blocked, anything else free).
inline GroundTruthField truth_from(const std::vector<std::string>& rows, int k = 1) {
    GroundTruthField f = make_field(static_cast<int>(rows.size()),
                                    static_cast<int>(rows[0].size()), k);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] == '#') f.set(static_cast<int>(r), static_cast<int>(c), true);
    return f;
}

// Passability of a belief map under a policy's unknown-cell rule.
inline std::vector<std::uint8_t> passable_cells(const GridMap& map, bool unknown_passable) {
    std::vector<std::uint8_t> pass(map.state.size(), 0);
    for (std::size_t i = 0; i < map.state.size(); ++i) {
        switch (map.state[i]) {
            case CellState::Obstacle: break;
            case CellState::Unexplored: pass[i] = unknown_passable ? 1 : 0; break;
            default: pass[i] = 1;
        }
    }
    return pass;
}

// 4-connected unit-cost BFS distances; -1 where unreachable.
inline std::vector<int> bfs_unit_distances(const std::vector<std::uint8_t>& passable, int rows,
                                           int cols, GridPos start) {
    std::vector<int> dist(passable.size(), -1);
    std::queue<int> q;
    const int s = start.row * cols + start.col;
    dist[s] = 0;
    q.push(s);
    static constexpr int dr[4] = {-1, 0, 1, 0};
    static constexpr int dc[4] = {0, 1, 0, -1};
    while (!q.empty()) {
        const int i = q.front();
        q.pop();
        const int r = i / cols;
        const int c = i % cols;
        for (int d = 0; d < 4; ++d) {
            const int nr = r + dr[d];
            const int nc = c + dc[d];
            if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
            const int ni = nr * cols + nc;
            if (!passable[ni] || dist[ni] >= 0) continue;
            dist[ni] = dist[i] + 1;
            q.push(ni);
        }
    }
    return dist;
}

// Reachability flood fill matching the planners' movement rule: 4- or
// 8-connectivity, diagonals refused between two blocked orthogonal cells.
inline std::vector<std::uint8_t> flood_reachable(const std::vector<std::uint8_t>& passable,
                                                 int rows, int cols, GridPos start,
                                                 bool eight_connected) {
    std::vector<std::uint8_t> seen(passable.size(), 0);
    if (!passable[start.row * cols + start.col]) return seen;
    std::queue<int> q;
    seen[start.row * cols + start.col] = 1;
    q.push(start.row * cols + start.col);
    static constexpr int dr[8] = {-1, 0, 1, 0, -1, 1, 1, -1};
    static constexpr int dc[8] = {0, 1, 0, -1, 1, 1, -1, -1};
    const int n = eight_connected ? 8 : 4;
    while (!q.empty()) {
        const int i = q.front();
        q.pop();
        const int r = i / cols;
        const int c = i % cols;
        for (int d = 0; d < n; ++d) {
            const int nr = r + dr[d];
            const int nc = c + dc[d];
            if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
            const int ni = nr * cols + nc;
            if (!passable[ni] || seen[ni]) continue;
            if (d >= 4 && !passable[r * cols + nc] && !passable[nr * cols + c]) continue;
            seen[ni] = 1;
            q.push(ni);
        }
    }
    return seen;
}

// Free cells of a fine (k=1) grid seen as a graph with 4-adjacency edges.
inline long free_cell_count(const GroundTruthField& f) { return f.free_fine_cells(); }

inline long free_adjacency_count(const GroundTruthField& f) {
    long edges = 0;
    for (int r = 0; r < f.rows_fine; ++r) {
        for (int c = 0; c < f.cols_fine; ++c) {
            if (f.at(r, c)) continue;
            if (r + 1 < f.rows_fine && !f.at(r + 1, c)) ++edges;
            if (c + 1 < f.cols_fine && !f.at(r, c + 1)) ++edges;
        }
    }
    return edges;
}

inline bool all_free_connected(const GroundTruthField& f, GridPos start = {0, 0}) {
    std::vector<std::uint8_t> passable(f.blocked.size());
    for (std::size_t i = 0; i < f.blocked.size(); ++i) passable[i] = f.blocked[i] ? 0 : 1;
    const auto seen = flood_reachable(passable, f.rows_fine, f.cols_fine, start, false);
    for (std::size_t i = 0; i < passable.size(); ++i)
        if (passable[i] && !seen[i]) return false;
    return true;
}

// A perfect maze: free cells connected and forming a tree (edges = cells-1).
inline bool is_perfect_maze(const GroundTruthField& f) {
    return all_free_connected(f) && free_adjacency_count(f) == free_cell_count(f) - 1;
}

}  // namespace testutil
