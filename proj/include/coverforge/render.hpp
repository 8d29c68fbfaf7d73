#pragma once

#include <string>
#include <vector>

#include "coverforge/grid.hpp"

// Deterministic map rendering: ASCII ('.' free, '#' obstacle, 'p' partial,
// 'o' covered, '*' trajectory), coarse grayscale PGM, or SVG with cells as
// squares and the trajectory as a polyline. All byte-stable for fixed input.

namespace coverforge {

enum class RenderFormat : std::uint8_t { Ascii, Pgm, Svg };

namespace detail {

inline std::vector<std::string> field_char_grid(const GroundTruthField& truth) {
    std::vector<std::string> grid(truth.rows(), std::string(truth.cols(), '.'));
    for (int r = 0; r < truth.rows(); ++r) {
        for (int c = 0; c < truth.cols(); ++c) {
            const CellClass cls = classify_coarse_cell(truth, {r, c});
            if (cls.is_obstacle())
                grid[r][c] = '#';
            else if (cls.is_partial())
                grid[r][c] = 'p';
        }
    }
    return grid;
}

inline std::vector<std::string> belief_char_grid(const GridMap& map) {
    std::vector<std::string> grid(map.rows, std::string(map.cols, '.'));
    for (int r = 0; r < map.rows; ++r) {
        for (int c = 0; c < map.cols; ++c) {
            switch (map.state[r * map.cols + c]) {
                case CellState::Unexplored: break;
                case CellState::Covered: grid[r][c] = 'o'; break;
                case CellState::Obstacle: grid[r][c] = '#'; break;
                case CellState::PartialObstacle: grid[r][c] = 'p'; break;
            }
        }
    }
    return grid;
}

inline void overlay_trajectory(std::vector<std::string>& grid, const std::vector<GridPos>& traj) {
    for (const GridPos& p : traj) {
        if (p.row >= 0 && p.row < static_cast<int>(grid.size()) && p.col >= 0 &&
            p.col < static_cast<int>(grid[p.row].size()))
            grid[p.row][p.col] = '*';
    }
}

inline std::string grid_to_ascii(const std::vector<std::string>& grid) {
    std::string out;
    for (const std::string& row : grid) {
        out += row;
        out.push_back('\n');
    }
    return out;
}

inline int gray_level(char c) {
    switch (c) {
        case '#': return 0;
        case 'p': return 128;
        case 'o': return 200;
        case '*': return 64;
        default: return 255;
    }
}

inline std::string grid_to_pgm(const std::vector<std::string>& grid) {
    const int rows = static_cast<int>(grid.size());
    const int cols = rows ? static_cast<int>(grid[0].size()) : 0;
    std::string out = "P2\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
    for (const std::string& row : grid) {
        for (int c = 0; c < cols; ++c) {
            if (c) out.push_back(' ');
            out += std::to_string(gray_level(row[c]));
        }
        out.push_back('\n');
    }
    return out;
}

inline const char* svg_fill(char c) {
    switch (c) {
        case '#': return "#2b2b2b";
        case 'p': return "#e0a43c";
        case 'o': return "#a9d6a1";
        default: return nullptr;  // free cells stay background
    }
}

inline std::string grid_to_svg(const std::vector<std::string>& grid,
                               const std::vector<GridPos>* traj) {
    constexpr int cell = 10;
    const int rows = static_cast<int>(grid.size());
    const int cols = rows ? static_cast<int>(grid[0].size()) : 0;
    const int w = cols * cell;
    const int h = rows * cell;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
                      "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " +
                      std::to_string(w) + " " + std::to_string(h) + "\">\n";
    out += "<rect width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
           "\" fill=\"#ffffff\"/>\n";
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const char ch = grid[r][c] == '*' ? 'o' : grid[r][c];
            const char* fill = svg_fill(ch);
            if (!fill) continue;
            out += "<rect x=\"" + std::to_string(c * cell) + "\" y=\"" + std::to_string(r * cell) +
                   "\" width=\"" + std::to_string(cell) + "\" height=\"" + std::to_string(cell) +
                   "\" fill=\"" + fill + "\"/>\n";
        }
    }
    if (traj && traj->size() > 1) {
        out += "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < traj->size(); ++i) {
            if (i) out.push_back(' ');
            out += std::to_string((*traj)[i].col * cell + cell / 2) + "," +
                   std::to_string((*traj)[i].row * cell + cell / 2);
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

inline std::string render_grid(std::vector<std::string> grid, const std::vector<GridPos>* traj,
                               RenderFormat format) {
    if (traj && format != RenderFormat::Svg) overlay_trajectory(grid, *traj);
    switch (format) {
        case RenderFormat::Ascii: return grid_to_ascii(grid);
        case RenderFormat::Pgm: return grid_to_pgm(grid);
        case RenderFormat::Svg: return grid_to_svg(grid, traj);
    }
    return {};
}

}  // namespace detail

inline std::string render_field(const GroundTruthField& truth,
                                const std::vector<GridPos>* trajectory = nullptr,
                                RenderFormat format = RenderFormat::Ascii) {
    return detail::render_grid(detail::field_char_grid(truth), trajectory, format);
}

inline std::string render_belief(const GridMap& map,
                                 const std::vector<GridPos>* trajectory = nullptr,
                                 RenderFormat format = RenderFormat::Ascii) {
    return detail::render_grid(detail::belief_char_grid(map), trajectory, format);
}

}  // namespace coverforge
