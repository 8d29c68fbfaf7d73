#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "coverforge/grid.hpp"

// Point-to-point planners over the belief map: Dijkstra, A* and DFS, sharing
// one neighbour model (4- or 8-connectivity, optimistic unknown cells,
// partial-obstacle cost factor, no corner cutting). Dijkstra and A* run on
// the same best-first engine, Dijkstra being the zero-heuristic case, so
// their expansion semantics coincide by construction.

namespace coverforge {

enum class Connectivity : int { Four = 4, Eight = 8 };
enum class Heuristic : std::uint8_t { Euclidean, Manhattan, Chebyshev };
enum class PlannerKind : std::uint8_t { AStar, Dijkstra, Dfs };

inline const char* to_string(PlannerKind p) {
    switch (p) {
        case PlannerKind::AStar: return "astar";
        case PlannerKind::Dijkstra: return "dijkstra";
        case PlannerKind::Dfs: return "dfs";
    }
    return "?";
}

struct TraversalPolicy {
    Connectivity connectivity = Connectivity::Eight;
    bool unknown_passable = true;        // treat Unexplored as traversable
    double partial_cost_factor = 1.5;    // >= 1, applied when entering a partial cell
    Heuristic heuristic = Heuristic::Euclidean;  // A* only
};

inline constexpr double kDiagonalStep = 1.4142135623730951;

struct Path {
    std::vector<GridPos> cells;
    double cost = 0.0;
    friend bool operator==(const Path&, const Path&) = default;
};

struct PlanResult {
    std::optional<Path> path;
    std::size_t expanded = 0;
    bool found() const { return path.has_value(); }
};

inline bool is_passable(const GridMap& map, GridPos p, const TraversalPolicy& policy) {
    switch (map.cell_state(p)) {
        case CellState::Obstacle: return false;
        case CellState::Unexplored: return policy.unknown_passable;
        default: return true;
    }
}

namespace detail {

// Canonical neighbour order: N, E, S, W, then NE, SE, SW, NW.
inline constexpr int kNeighborDr[8] = {-1, 0, 1, 0, -1, 1, 1, -1};
inline constexpr int kNeighborDc[8] = {0, 1, 0, -1, 1, 1, -1, -1};

// Diagonal step squeezing between two orthogonal obstacles is forbidden.
inline bool corner_cut(const GridMap& map, GridPos from, int dr, int dc) {
    return map.cell_state({from.row + dr, from.col}) == CellState::Obstacle &&
           map.cell_state({from.row, from.col + dc}) == CellState::Obstacle;
}

// Calls fn(neighbor, step_length) for each legal move out of p, in canonical
// order. step_length is geometric (1 or sqrt 2), before the partial factor.
template <typename Fn>
void visit_neighbors(const GridMap& map, GridPos p, const TraversalPolicy& policy, Fn&& fn) {
    const int n = policy.connectivity == Connectivity::Eight ? 8 : 4;
    for (int i = 0; i < n; ++i) {
        const int dr = kNeighborDr[i];
        const int dc = kNeighborDc[i];
        GridPos q{p.row + dr, p.col + dc};
        if (!map.in_bounds(q) || !is_passable(map, q, policy)) continue;
        if (i >= 4 && corner_cut(map, p, dr, dc)) continue;
        fn(q, i >= 4 ? kDiagonalStep : 1.0);
    }
}

inline void check_endpoints(const GridMap& map, GridPos start, GridPos goal,
                            const TraversalPolicy& policy) {
    if (!map.in_bounds(start) || !map.in_bounds(goal))
        throw std::out_of_range("planner: start or goal out of bounds");
    if (map.cell_state(start) == CellState::Obstacle)
        throw std::invalid_argument("planner: start cell is an obstacle");
    if (!is_passable(map, start, policy))
        throw std::invalid_argument("planner: start cell is not passable under the policy");
}

inline Path reconstruct(const GridMap& map, const std::vector<int>& parent, int goal_idx,
                        double cost) {
    std::vector<GridPos> cells;
    for (int i = goal_idx; i >= 0; i = parent[i])
        cells.push_back({i / map.cols, i % map.cols});
    std::reverse(cells.begin(), cells.end());
    return Path{std::move(cells), cost};
}

}  // namespace detail

inline double step_cost(const GridMap& map, GridPos to, double length,
                        const TraversalPolicy& policy) {
    return map.cell_state(to) == CellState::PartialObstacle ? length * policy.partial_cost_factor
                                                            : length;
}

inline double heuristic_value(Heuristic h, GridPos a, GridPos b) {
    const double dr = std::abs(a.row - b.row);
    const double dc = std::abs(a.col - b.col);
    switch (h) {
        case Heuristic::Euclidean: return std::sqrt(dr * dr + dc * dc);
        case Heuristic::Manhattan: return dr + dc;
        case Heuristic::Chebyshev: return std::max(dr, dc);
    }
    return 0.0;
}

// Best-first engine shared by Dijkstra and A*. The queue orders by
// (f, h, row-major index) so results are fully deterministic; ties prefer
// nodes closer to the goal. `h` must be admissible for the policy.
template <typename H>
PlanResult best_first_search(const GridMap& map, GridPos start, GridPos goal,
                             const TraversalPolicy& policy, H&& h) {
    detail::check_endpoints(map, start, goal, policy);
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = static_cast<std::size_t>(map.rows) * map.cols;
    std::vector<double> dist(n, inf);
    std::vector<int> parent(n, -1);
    std::vector<std::uint8_t> closed(n, 0);

    using QueueEntry = std::tuple<double, double, int>;  // f, h, index
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> open;

    const int start_idx = map.index(start);
    const int goal_idx = map.index(goal);
    const double h0 = h(start, goal);
    dist[start_idx] = 0.0;
    open.emplace(h0, h0, start_idx);

    std::size_t expanded = 0;
    while (!open.empty()) {
        const auto [f, hv, idx] = open.top();
        open.pop();
        if (closed[idx]) continue;
        closed[idx] = 1;
        ++expanded;
        if (idx == goal_idx)
            return {detail::reconstruct(map, parent, goal_idx, dist[idx]), expanded};
        GridPos p{idx / map.cols, idx % map.cols};
        detail::visit_neighbors(map, p, policy, [&](GridPos q, double len) {
            const int qi = map.index(q);
            if (closed[qi]) return;
            const double nd = dist[idx] + step_cost(map, q, len, policy);
            if (nd < dist[qi]) {
                dist[qi] = nd;
                parent[qi] = idx;
                const double qh = h(q, goal);
                open.emplace(nd + qh, qh, qi);
            }
        });
    }
    return {std::nullopt, expanded};
}

inline PlanResult plan_dijkstra(const GridMap& map, GridPos start, GridPos goal,
                                const TraversalPolicy& policy) {
    return best_first_search(map, start, goal, policy, [](GridPos, GridPos) { return 0.0; });
}

inline PlanResult plan_astar(const GridMap& map, GridPos start, GridPos goal,
                             const TraversalPolicy& policy) {
    if (policy.heuristic == Heuristic::Manhattan && policy.connectivity == Connectivity::Eight)
        throw std::invalid_argument(
            "plan_astar: Manhattan heuristic is inadmissible under 8-connectivity");
    const Heuristic h = policy.heuristic;
    return best_first_search(map, start, goal, policy,
                             [h](GridPos a, GridPos b) { return heuristic_value(h, a, b); });
}

// Depth-first search with the canonical neighbour order; returns some valid
// path iff one exists, not necessarily a cheapest one.
inline PlanResult plan_dfs(const GridMap& map, GridPos start, GridPos goal,
                           const TraversalPolicy& policy) {
    detail::check_endpoints(map, start, goal, policy);
    const std::size_t n = static_cast<std::size_t>(map.rows) * map.cols;
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<int> parent(n, -1);
    std::vector<std::pair<int, int>> stack;  // cell index, parent index
    stack.emplace_back(map.index(start), -1);
    std::size_t expanded = 0;
    while (!stack.empty()) {
        const auto [idx, par] = stack.back();
        stack.pop_back();
        if (visited[idx]) continue;
        visited[idx] = 1;
        parent[idx] = par;
        ++expanded;
        if (idx == map.index(goal)) {
            Path path = detail::reconstruct(map, parent, idx, 0.0);
            double cost = 0.0;
            for (std::size_t i = 1; i < path.cells.size(); ++i) {
                const bool diag = path.cells[i].row != path.cells[i - 1].row &&
                                  path.cells[i].col != path.cells[i - 1].col;
                cost += step_cost(map, path.cells[i], diag ? kDiagonalStep : 1.0, policy);
            }
            path.cost = cost;
            return {std::move(path), expanded};
        }
        GridPos p{idx / map.cols, idx % map.cols};
        // Collect in canonical order, push reversed so N is explored first.
        std::vector<int> next;
        detail::visit_neighbors(map, p, policy, [&](GridPos q, double) {
            const int qi = map.index(q);
            if (!visited[qi]) next.push_back(qi);
        });
        for (auto it = next.rbegin(); it != next.rend(); ++it) stack.emplace_back(*it, idx);
    }
    return {std::nullopt, expanded};
}

inline PlanResult plan(PlannerKind kind, const GridMap& map, GridPos start, GridPos goal,
                       const TraversalPolicy& policy) {
    switch (kind) {
        case PlannerKind::AStar: return plan_astar(map, start, goal, policy);
        case PlannerKind::Dijkstra: return plan_dijkstra(map, start, goal, policy);
        case PlannerKind::Dfs: return plan_dfs(map, start, goal, policy);
    }
    throw std::invalid_argument("plan: unknown planner");
}

// Recomputes a path's cost from its steps, validating adjacency under the
// policy's connectivity.
inline double path_cost(const GridMap& map, const Path& path, const TraversalPolicy& policy) {
    double cost = 0.0;
    for (std::size_t i = 1; i < path.cells.size(); ++i) {
        const GridPos a = path.cells[i - 1];
        const GridPos b = path.cells[i];
        const int dr = b.row - a.row;
        const int dc = b.col - a.col;
        if (dr < -1 || dr > 1 || dc < -1 || dc > 1 || (dr == 0 && dc == 0))
            throw std::invalid_argument("path_cost: consecutive cells are not adjacent");
        const bool diag = dr != 0 && dc != 0;
        if (diag && policy.connectivity == Connectivity::Four)
            throw std::invalid_argument("path_cost: diagonal step under 4-connectivity");
        cost += step_cost(map, b, diag ? kDiagonalStep : 1.0, policy);
    }
    return cost;
}

// Single-source cost sweep: minimum policy path cost from `source` to every
// cell, infinity where unreachable. Used for nearest-target selection.
inline std::vector<double> distance_sweep(const GridMap& map, GridPos source,
                                          const TraversalPolicy& policy) {
    if (!map.in_bounds(source)) throw std::out_of_range("distance_sweep: source out of bounds");
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = static_cast<std::size_t>(map.rows) * map.cols;
    std::vector<double> dist(n, inf);
    std::vector<std::uint8_t> closed(n, 0);
    using QueueEntry = std::pair<double, int>;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> open;
    dist[map.index(source)] = 0.0;
    open.emplace(0.0, map.index(source));
    while (!open.empty()) {
        const auto [d, idx] = open.top();
        open.pop();
        if (closed[idx]) continue;
        closed[idx] = 1;
        GridPos p{idx / map.cols, idx % map.cols};
        detail::visit_neighbors(map, p, policy, [&](GridPos q, double len) {
            const int qi = map.index(q);
            if (closed[qi]) return;
            const double nd = d + step_cost(map, q, len, policy);
            if (nd < dist[qi]) {
                dist[qi] = nd;
                open.emplace(nd, qi);
            }
        });
    }
    return dist;
}

}  // namespace coverforge
