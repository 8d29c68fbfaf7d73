#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coverforge/grid.hpp"
#include "coverforge/rng.hpp"

// Ground-truth field generators (random threshold, irregular blobs, mazes,
// geometric patterns) and the ASCII / PGM field formats. All generators are
// deterministic functions of their parameters and seed, and always leave the
// start cell (0,0) free.

namespace coverforge {

using Seed = std::uint64_t;

enum class PatternKind : std::uint8_t { Vertical, Horizontal, Diagonal, Spiral };

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class GenerationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double obstacle_fraction(const GroundTruthField& f) {
    if (f.blocked.empty()) return 0.0;
    return static_cast<double>(f.blocked_fine_cells()) / static_cast<double>(f.blocked.size());
}

// Each coarse cell's k*k block becomes all-blocked independently with the
// given probability; (0,0) is forced free afterwards.
inline GroundTruthField gen_random(int rows, int cols, double threshold, Seed seed, int k = 1) {
    if (threshold < 0.0 || threshold > 1.0)
        throw std::invalid_argument("gen_random: threshold must be in [0,1]");
    GroundTruthField f = make_field_coarse(rows, cols, k);
    SplitMix64 rng(seed);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (rng.next_double() < threshold) {
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) f.set(r * k + i, c * k + j, true);
            }
        }
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) f.set(i, j, false);
    return f;
}

namespace detail {

inline bool in_start_block(int fr, int fc, int k) { return fr < k && fc < k; }

inline GroundTruthField gen_irregular_attempt(int rows, int cols, int n_obstacles, int k,
                                              SplitMix64& rng) {
    GroundTruthField f = make_field_coarse(rows, cols, k);
    const int fine_rows = rows * k;
    const int fine_cols = cols * k;
    for (int b = 0; b < n_obstacles; ++b) {
        const int target = 20 + static_cast<int>(rng.bounded(41));  // 20..60 sub-cells
        int fr, fc;
        do {
            fr = static_cast<int>(rng.bounded(fine_rows));
            fc = static_cast<int>(rng.bounded(fine_cols));
        } while (in_start_block(fr, fc, k));
        int marked = 0;
        for (int step = 0; marked < target && step < 50 * target; ++step) {
            if (!in_start_block(fr, fc, k) && !f.at(fr, fc)) {
                f.set(fr, fc, true);
                ++marked;
            }
            static constexpr int dr[4] = {-1, 0, 1, 0};
            static constexpr int dc[4] = {0, 1, 0, -1};
            const int d = static_cast<int>(rng.bounded(4));
            const int nr = fr + dr[d];
            const int nc = fc + dc[d];
            if (nr >= 0 && nr < fine_rows && nc >= 0 && nc < fine_cols) {
                fr = nr;
                fc = nc;
            }
        }
    }
    return f;
}

inline bool has_partial_cell(const GroundTruthField& f) {
    for (int r = 0; r < f.rows(); ++r)
        for (int c = 0; c < f.cols(); ++c)
            if (classify_coarse_cell(f, {r, c}).is_partial()) return true;
    return false;
}

}  // namespace detail

// Drops n_obstacles random-walk blobs of fine sub-cells onto the field. Blob
// boundaries straddle coarse cells, so for k > 1 the result always contains
// at least one partial-obstacle classification.
inline GroundTruthField gen_irregular(int rows, int cols, int n_obstacles, Seed seed, int k = 3) {
    if (n_obstacles < 1) throw std::invalid_argument("gen_irregular: n_obstacles must be >= 1");
    if (rows < 1 || cols < 1 || k < 1)
        throw std::invalid_argument("gen_irregular: dimensions and k must be positive");
    const long fine_area = static_cast<long>(rows) * cols * k * k;
    if (fine_area - static_cast<long>(k) * k < 60L * n_obstacles)
        throw GenerationError("gen_irregular: field too small for requested obstacle blobs");

    GroundTruthField f;
    for (std::uint64_t attempt = 0;; ++attempt) {
        SplitMix64 rng(seed + attempt * 0x9E3779B97F4A7C15ULL);
        f = detail::gen_irregular_attempt(rows, cols, n_obstacles, k, rng);
        if (k == 1 || detail::has_partial_cell(f)) return f;
        if (attempt == 31) break;
    }
    // Every blob-touched coarse cell came out fully blocked; open one sub-cell
    // of the first such cell to produce a partial classification.
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (classify_coarse_cell(f, {r, c}).is_obstacle()) {
                f.set(r * k, c * k, false);
                return f;
            }
        }
    }
    throw GenerationError("gen_irregular: no obstacle cells were placed");
}

namespace detail {

// Lattice cells live at even grid coordinates; the odd cell between two
// lattice neighbours is the wall that carving removes.
struct MazeLattice {
    int lat_rows;
    int lat_cols;
    GroundTruthField grid;

    MazeLattice(int rows, int cols)
        : lat_rows((rows + 1) / 2), lat_cols((cols + 1) / 2), grid(make_field(rows, cols, 1)) {
        for (auto& b : grid.blocked) b = 1;
    }
    void carve_cell(int i, int j) { grid.set(2 * i, 2 * j, false); }
    // wall cell midway between two lattice cells, given in grid coordinates
    void carve_between(int i0, int j0, int i1, int j1) {
        grid.set((i0 + i1) / 2, (j0 + j1) / 2, false);
    }
};

inline void check_maze_dims(int rows, int cols) {
    if (rows < 2 || cols < 2) throw std::invalid_argument("maze dimensions must be >= 2");
}

}  // namespace detail

// Recursive-backtracker carve: walk from the current head to a random
// unvisited lattice neighbour, backtrack on dead ends. Produces a perfect
// maze (free cells form a single spanning tree).
inline GroundTruthField gen_maze_backtracker(int rows, int cols, Seed seed) {
    detail::check_maze_dims(rows, cols);
    detail::MazeLattice lat(rows, cols);
    SplitMix64 rng(seed);
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(lat.lat_rows) * lat.lat_cols, 0);
    std::vector<std::pair<int, int>> stack;
    auto visit = [&](int i, int j) {
        visited[static_cast<std::size_t>(i) * lat.lat_cols + j] = 1;
        lat.carve_cell(i, j);
        stack.emplace_back(i, j);
    };
    visit(0, 0);
    static constexpr int di[4] = {-1, 0, 1, 0};  // N, E, S, W
    static constexpr int dj[4] = {0, 1, 0, -1};
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        int cand[4];
        int n = 0;
        for (int d = 0; d < 4; ++d) {
            const int ni = i + di[d];
            const int nj = j + dj[d];
            if (ni < 0 || ni >= lat.lat_rows || nj < 0 || nj >= lat.lat_cols) continue;
            if (visited[static_cast<std::size_t>(ni) * lat.lat_cols + nj]) continue;
            cand[n++] = d;
        }
        if (n == 0) {
            stack.pop_back();
            continue;
        }
        const int d = cand[rng.bounded(static_cast<std::uint64_t>(n))];
        const int ni = i + di[d];
        const int nj = j + dj[d];
        lat.carve_between(2 * i, 2 * j, 2 * ni, 2 * nj);
        visit(ni, nj);
    }
    return std::move(lat.grid);
}

// Explicit-stack depth-first carve with last-in frontier ordering. Each
// expansion shuffles the whole neighbour list, so the random stream is
// consumed differently from gen_maze_backtracker and the two generators
// disagree for the same seed.
inline GroundTruthField gen_maze_dfs(int rows, int cols, Seed seed) {
    detail::check_maze_dims(rows, cols);
    detail::MazeLattice lat(rows, cols);
    SplitMix64 rng(seed);
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(lat.lat_rows) * lat.lat_cols, 0);
    struct Entry {
        int i, j, pi, pj;
    };
    std::vector<Entry> stack;
    stack.push_back({0, 0, -1, -1});
    static constexpr int di[4] = {-1, 0, 1, 0};
    static constexpr int dj[4] = {0, 1, 0, -1};
    while (!stack.empty()) {
        Entry e = stack.back();
        stack.pop_back();
        auto& seen = visited[static_cast<std::size_t>(e.i) * lat.lat_cols + e.j];
        if (seen) continue;
        seen = 1;
        lat.carve_cell(e.i, e.j);
        if (e.pi >= 0) lat.carve_between(2 * e.i, 2 * e.j, 2 * e.pi, 2 * e.pj);
        std::vector<int> dirs = {0, 1, 2, 3};
        rng.shuffle(dirs);
        for (int d : dirs) {
            const int ni = e.i + di[d];
            const int nj = e.j + dj[d];
            if (ni < 0 || ni >= lat.lat_rows || nj < 0 || nj >= lat.lat_cols) continue;
            if (visited[static_cast<std::size_t>(ni) * lat.lat_cols + nj]) continue;
            stack.push_back({ni, nj, e.i, e.j});
        }
    }
    return std::move(lat.grid);
}

// Seedless geometric wall patterns. All four keep the free space connected
// and reachable from (0,0).
inline GroundTruthField gen_pattern(PatternKind kind, int rows, int cols) {
    if (rows < 3 || cols < 3) throw std::invalid_argument("gen_pattern: dimensions must be >= 3");
    GroundTruthField f = make_field(rows, cols, 1);
    switch (kind) {
        case PatternKind::Vertical:
            // Full-height wall every second column, gap alternating bottom/top.
            for (int c = 1; c < cols; c += 2) {
                const int wall_index = (c - 1) / 2;
                const int gap_row = wall_index % 2 == 0 ? rows - 1 : 0;
                for (int r = 0; r < rows; ++r)
                    if (r != gap_row) f.set(r, c, true);
            }
            break;
        case PatternKind::Horizontal:
            for (int r = 1; r < rows; r += 2) {
                const int wall_index = (r - 1) / 2;
                const int gap_col = wall_index % 2 == 0 ? cols - 1 : 0;
                for (int c = 0; c < cols; ++c)
                    if (c != gap_col) f.set(r, c, true);
            }
            break;
        case PatternKind::Diagonal:
            // Anti-diagonal walls every third diagonal; one gap each, end
            // alternating so the free bands chain together.
            for (int d = 3; d <= rows - 1 + cols - 1; d += 3) {
                const int wall_index = d / 3 - 1;
                const int r_lo = std::max(0, d - (cols - 1));
                const int r_hi = std::min(rows - 1, d);
                const int gap_row = wall_index % 2 == 0 ? r_lo : r_hi;
                for (int r = r_lo; r <= r_hi; ++r)
                    if (r != gap_row) f.set(r, d - r, true);
            }
            break;
        case PatternKind::Spiral: {
            // Concentric rectangular walls at odd insets, each with a single
            // gap that rotates a quarter turn per ring.
            int ring_index = 0;
            for (int j = 1; rows - 1 - j >= j && cols - 1 - j >= j; j += 2, ++ring_index) {
                std::vector<GridPos> ring;
                for (int c = j; c <= cols - 1 - j; ++c) ring.push_back({j, c});
                for (int r = j + 1; r <= rows - 1 - j; ++r) ring.push_back({r, cols - 1 - j});
                if (rows - 1 - j > j)
                    for (int c = cols - 2 - j; c >= j; --c) ring.push_back({rows - 1 - j, c});
                if (cols - 1 - j > j)
                    for (int r = rows - 2 - j; r > j; --r) ring.push_back({r, j});
                // A corner gap would not open into the interior; advance past
                // corners so the gap always joins the bands on both sides.
                auto is_corner = [&](GridPos p) {
                    return (p.row == j || p.row == rows - 1 - j) &&
                           (p.col == j || p.col == cols - 1 - j);
                };
                std::size_t gap = (static_cast<std::size_t>(ring_index % 4) * ring.size()) / 4;
                for (std::size_t tries = 0; tries < ring.size() && is_corner(ring[gap]); ++tries)
                    gap = (gap + 1) % ring.size();
                for (std::size_t i = 0; i < ring.size(); ++i)
                    if (i != gap) f.set(ring[i].row, ring[i].col, true);
            }
            break;
        }
    }
    f.set(0, 0, false);
    return f;
}

// ---------------------------------------------------------------------------
// ASCII field format. Header `field <k> <rows_fine> <cols_fine>`, then
// rows_fine lines of cols_fine characters, '.' = free, '#' = blocked, LF line
// endings, no trailing whitespace.

inline std::string serialize_field(const GroundTruthField& f) {
    std::string out = "field " + std::to_string(f.k) + " " + std::to_string(f.rows_fine) + " " +
                      std::to_string(f.cols_fine) + "\n";
    out.reserve(out.size() + static_cast<std::size_t>(f.rows_fine) * (f.cols_fine + 1));
    for (int r = 0; r < f.rows_fine; ++r) {
        for (int c = 0; c < f.cols_fine; ++c) out.push_back(f.at(r, c) ? '#' : '.');
        out.push_back('\n');
    }
    return out;
}

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    // A trailing LF yields one empty final segment; drop it.
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

inline bool parse_int(std::string_view tok, int& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ') ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace detail

inline GroundTruthField parse_field(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header");
    const auto header = detail::split_ws(lines[0]);
    int k = 0, rows_fine = 0, cols_fine = 0;
    if (header.size() != 4 || header[0] != "field" || !detail::parse_int(header[1], k) ||
        !detail::parse_int(header[2], rows_fine) || !detail::parse_int(header[3], cols_fine))
        throw ParseError(1, "malformed header, expected 'field <k> <rows> <cols>'");
    if (k < 1 || rows_fine < 1 || cols_fine < 1)
        throw ParseError(1, "header values must be positive");
    if (rows_fine % k != 0 || cols_fine % k != 0)
        throw ParseError(1, "grid dimensions are not multiples of k");
    GroundTruthField f = make_field(rows_fine, cols_fine, k);
    for (int r = 0; r < rows_fine; ++r) {
        const int line_no = r + 2;
        if (static_cast<std::size_t>(r + 1) >= lines.size())
            throw ParseError(line_no, "unexpected end of input");
        const std::string_view row = lines[static_cast<std::size_t>(r) + 1];
        if (static_cast<int>(row.size()) != cols_fine)
            throw ParseError(line_no, "ragged row, expected " + std::to_string(cols_fine) +
                                          " characters, got " + std::to_string(row.size()));
        for (int c = 0; c < cols_fine; ++c) {
            if (row[c] == '#')
                f.set(r, c, true);
            else if (row[c] != '.')
                throw ParseError(line_no, std::string("illegal character '") + row[c] + "'");
        }
    }
    if (lines.size() > static_cast<std::size_t>(rows_fine) + 1)
        throw ParseError(rows_fine + 2, "trailing content after grid rows");
    return f;
}

// ---------------------------------------------------------------------------
// PGM (P2) import/export. 0 = blocked, 255 = free; the subdivision factor is
// carried in a `# k=<n>` comment line.

inline std::string serialize_pgm(const GroundTruthField& f) {
    std::string out = "P2\n# k=" + std::to_string(f.k) + "\n" + std::to_string(f.cols_fine) +
                      " " + std::to_string(f.rows_fine) + "\n255\n";
    for (int r = 0; r < f.rows_fine; ++r) {
        for (int c = 0; c < f.cols_fine; ++c) {
            if (c > 0) out.push_back(' ');
            out += f.at(r, c) ? "0" : "255";
        }
        out.push_back('\n');
    }
    return out;
}

inline GroundTruthField parse_pgm(std::string_view text) {
    int line_no = 1;
    int k = 1;
    std::vector<long> values;
    std::string tok;
    std::size_t i = 0;
    auto next_token = [&]() -> bool {
        tok.clear();
        while (i < text.size()) {
            const char ch = text[i];
            if (ch == '#') {
                // comment to end of line; pick up `# k=<n>`
                std::size_t end = text.find('\n', i);
                if (end == std::string_view::npos) end = text.size();
                std::string_view comment = text.substr(i, end - i);
                const std::size_t pos = comment.find("k=");
                if (pos != std::string_view::npos) {
                    int kv = 0;
                    if (detail::parse_int(comment.substr(pos + 2), kv) && kv >= 1) k = kv;
                }
                i = end;
                continue;
            }
            if (ch == '\n') {
                ++line_no;
                ++i;
                if (!tok.empty()) return true;
                continue;
            }
            if (ch == ' ' || ch == '\t' || ch == '\r') {
                ++i;
                if (!tok.empty()) return true;
                continue;
            }
            tok.push_back(ch);
            ++i;
        }
        return !tok.empty();
    };
    if (!next_token() || tok != "P2") throw ParseError(line_no, "not a P2 PGM");
    int width = 0, height = 0, maxval = 0;
    if (!next_token() || !detail::parse_int(tok, width) || width < 1)
        throw ParseError(line_no, "bad PGM width");
    if (!next_token() || !detail::parse_int(tok, height) || height < 1)
        throw ParseError(line_no, "bad PGM height");
    if (!next_token() || !detail::parse_int(tok, maxval) || maxval < 1)
        throw ParseError(line_no, "bad PGM maxval");
    values.reserve(static_cast<std::size_t>(width) * height);
    while (next_token()) {
        int v = 0;
        if (!detail::parse_int(tok, v) || v < 0 || v > maxval)
            throw ParseError(line_no, "bad PGM sample '" + tok + "'");
        values.push_back(v);
    }
    if (values.size() != static_cast<std::size_t>(width) * height)
        throw ParseError(line_no, "PGM sample count does not match dimensions");
    if (height % k != 0 || width % k != 0)
        throw ParseError(line_no, "PGM dimensions are not multiples of k");
    GroundTruthField f = make_field(height, width, k);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            f.set(r, c, values[static_cast<std::size_t>(r) * width + c] == 0);
    return f;
}

// ---------------------------------------------------------------------------
// File helpers; format chosen by extension (.pgm vs anything else).

inline bool has_pgm_extension(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline GroundTruthField load_field(const std::string& path) {
    const std::string text = read_text_file(path);
    return has_pgm_extension(path) ? parse_pgm(text) : parse_field(text);
}

inline void save_field(const GroundTruthField& f, const std::string& path) {
    write_text_file(path, has_pgm_extension(path) ? serialize_pgm(f) : serialize_field(f));
}

}  // namespace coverforge
