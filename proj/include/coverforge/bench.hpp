#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "coverforge/coverage.hpp"
#include "coverforge/field_gen.hpp"

// Benchmark harness: run a matrix of (run, variant) coverage simulations over
// generated or file-based fields and emit CSV / Markdown tables with
// per-variant means. Cells may run in parallel (capped by the
// COVER_FORGE_THREADS environment variable); results are merged in spec
// order, so output bytes do not depend on the thread count.

namespace coverforge {

enum class FieldSourceKind : std::uint8_t {
    Random,
    Irregular,
    MazeBacktracker,
    MazeDfs,
    Pattern,
    File
};

struct FieldSource {
    FieldSourceKind kind = FieldSourceKind::Random;
    int rows = 25;
    int cols = 50;
    int k = 1;
    double threshold = 0.2;
    int n_obstacles = 2;
    PatternKind pattern = PatternKind::Spiral;
    std::vector<Seed> seeds = {0};
    std::string path;  // FieldSourceKind::File
};

enum class BenchFormat : std::uint8_t { Csv, Markdown };

struct BenchSpec {
    FieldSource source;
    std::vector<CoverageConfig> variants;
    int runs = 1;
    GridPos start{0, 0};
    BenchFormat format = BenchFormat::Markdown;
};

struct BenchRow {
    int run = 0;  // 1-based
    Seed seed = 0;
    ScenarioMode mode = ScenarioMode::FourState;
    PlannerKind planner = PlannerKind::AStar;
    long ticks = 0;
    double minutes = 0.0;
    double coverage = 0.0;
    long partial_cells = 0;
    long replans = 0;
    long switches = 0;
    long turns = 0;
    bool complete = false;
};

struct BenchResult {
    std::vector<BenchRow> rows;  // run-major, variant order within each run
    std::size_t variants = 0;
    int runs = 0;
};

inline int bench_thread_cap() {
    if (const char* env = std::getenv("COVER_FORGE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

namespace detail {

inline Seed seed_for_run(const FieldSource& src, int run_index) {
    if (src.seeds.empty()) return static_cast<Seed>(run_index);
    return src.seeds[static_cast<std::size_t>(run_index) % src.seeds.size()];
}

inline GroundTruthField realize_field(const FieldSource& src, int run_index,
                                      const std::string& file_text) {
    const Seed seed = seed_for_run(src, run_index);
    switch (src.kind) {
        case FieldSourceKind::Random:
            return gen_random(src.rows, src.cols, src.threshold, seed, src.k);
        case FieldSourceKind::Irregular:
            return gen_irregular(src.rows, src.cols, src.n_obstacles, seed, src.k);
        case FieldSourceKind::MazeBacktracker: return gen_maze_backtracker(src.rows, src.cols, seed);
        case FieldSourceKind::MazeDfs: return gen_maze_dfs(src.rows, src.cols, seed);
        case FieldSourceKind::Pattern: return gen_pattern(src.pattern, src.rows, src.cols);
        case FieldSourceKind::File:
            return has_pgm_extension(src.path) ? parse_pgm(file_text) : parse_field(file_text);
    }
    throw std::invalid_argument("realize_field: unknown source kind");
}

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

inline BenchResult run_bench(const BenchSpec& spec, int threads = 0) {
    if (spec.runs < 1) throw std::invalid_argument("run_bench: runs must be >= 1");
    if (spec.variants.empty()) throw std::invalid_argument("run_bench: no variants");
    std::string file_text;
    if (spec.source.kind == FieldSourceKind::File) file_text = read_text_file(spec.source.path);

    const std::size_t n_variants = spec.variants.size();
    const std::size_t n_jobs = static_cast<std::size_t>(spec.runs) * n_variants;
    BenchResult result;
    result.rows.resize(n_jobs);
    result.variants = n_variants;
    result.runs = spec.runs;

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= n_jobs) return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error) return;
            }
            try {
                const int run_index = static_cast<int>(job / n_variants);
                const std::size_t variant_index = job % n_variants;
                const GroundTruthField field =
                    detail::realize_field(spec.source, run_index, file_text);
                const CoverageConfig& cfg = spec.variants[variant_index];
                const CoverageReport rep = run_coverage(field, spec.start, cfg);
                BenchRow& row = result.rows[job];
                row.run = run_index + 1;
                row.seed = detail::seed_for_run(spec.source, run_index);
                row.mode = cfg.mode;
                row.planner = cfg.planner;
                row.ticks = rep.ticks;
                row.minutes = rep.minutes;
                row.coverage = rep.coverage_percent;
                row.partial_cells = rep.partial_cells_identified;
                row.replans = rep.replans;
                row.switches = rep.planner_switches;
                row.turns = rep.turns;
                row.complete = rep.complete;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    int n_threads = threads > 0 ? threads : bench_thread_cap();
    n_threads = std::min<int>(n_threads, static_cast<int>(n_jobs));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return result;
}

namespace detail {

struct VariantMeans {
    double ticks = 0, minutes = 0, coverage = 0, partials = 0, replans = 0, switches = 0,
           turns = 0;
};

inline std::vector<VariantMeans> per_variant_means(const BenchResult& r) {
    std::vector<VariantMeans> means(r.variants);
    for (std::size_t job = 0; job < r.rows.size(); ++job) {
        const BenchRow& row = r.rows[job];
        VariantMeans& m = means[job % r.variants];
        m.ticks += row.ticks;
        m.minutes += row.minutes;
        m.coverage += row.coverage;
        m.partials += row.partial_cells;
        m.replans += row.replans;
        m.switches += row.switches;
        m.turns += row.turns;
    }
    for (VariantMeans& m : means) {
        m.ticks /= r.runs;
        m.minutes /= r.runs;
        m.coverage /= r.runs;
        m.partials /= r.runs;
        m.replans /= r.runs;
        m.switches /= r.runs;
        m.turns /= r.runs;
    }
    return means;
}

}  // namespace detail

// RFC-4180-style CSV: comma-separated, header row, LF line endings. Data rows
// first, then one `mean` row per variant.
inline std::string bench_csv(const BenchResult& r) {
    using detail::fixed2;
    std::string out = "run,mode,planner,ticks,minutes,coverage_percent,partial_cells,replans,"
                      "switches,turns\n";
    for (const BenchRow& row : r.rows) {
        out += std::to_string(row.run);
        out += ",";
        out += to_string(row.mode);
        out += ",";
        out += to_string(row.planner);
        out += "," + std::to_string(row.ticks) + "," + fixed2(row.minutes) + "," +
               fixed2(row.coverage) + "," + std::to_string(row.partial_cells) + "," +
               std::to_string(row.replans) + "," + std::to_string(row.switches) + "," +
               std::to_string(row.turns) + "\n";
    }
    const auto means = detail::per_variant_means(r);
    for (std::size_t v = 0; v < means.size(); ++v) {
        const BenchRow& proto = r.rows[v];
        out += "mean,";
        out += to_string(proto.mode);
        out += ",";
        out += to_string(proto.planner);
        out += "," + fixed2(means[v].ticks) + "," + fixed2(means[v].minutes) + "," +
               fixed2(means[v].coverage) + "," + fixed2(means[v].partials) + "," +
               fixed2(means[v].replans) + "," + fixed2(means[v].switches) + "," +
               fixed2(means[v].turns) + "\n";
    }
    return out;
}

inline std::string bench_markdown(const BenchResult& r) {
    using detail::fixed2;
    std::string out =
        "| run | mode | planner | ticks | minutes | coverage % | partial cells | replans | "
        "switches | turns |\n"
        "|-----|------|---------|-------|---------|------------|---------------|---------|"
        "----------|-------|\n";
    for (const BenchRow& row : r.rows) {
        out += "| " + std::to_string(row.run) + " | " + to_string(row.mode) + " | " +
               to_string(row.planner) + " | " + std::to_string(row.ticks) + " | " +
               fixed2(row.minutes) + " | " + fixed2(row.coverage) + " | " +
               std::to_string(row.partial_cells) + " | " + std::to_string(row.replans) + " | " +
               std::to_string(row.switches) + " | " + std::to_string(row.turns) + " |\n";
    }
    out += "\nPer-variant means:\n\n";
    out += "| mode | planner | ticks | minutes | coverage % | partial cells | replans | switches "
           "| turns |\n"
           "|------|---------|-------|---------|------------|---------------|---------|----------"
           "|-------|\n";
    const auto means = detail::per_variant_means(r);
    for (std::size_t v = 0; v < means.size(); ++v) {
        const BenchRow& proto = r.rows[v];
        out += "| " + std::string(to_string(proto.mode)) + " | " + to_string(proto.planner) +
               " | " + fixed2(means[v].ticks) + " | " + fixed2(means[v].minutes) + " | " +
               fixed2(means[v].coverage) + " | " + fixed2(means[v].partials) + " | " +
               fixed2(means[v].replans) + " | " + fixed2(means[v].switches) + " | " +
               fixed2(means[v].turns) + " |\n";
    }
    return out;
}

}  // namespace coverforge
