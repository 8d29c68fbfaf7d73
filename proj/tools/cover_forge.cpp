// cover-forge: generate fields, plan point-to-point paths, run coverage
// simulations, execute benchmark matrices and render maps.
//
// Exit codes: 0 success, 2 usage error, 3 no path, 4 runtime failure.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coverforge/bench.hpp"
#include "coverforge/coverage.hpp"
#include "coverforge/field_gen.hpp"
#include "coverforge/grid.hpp"
#include "coverforge/planners.hpp"
#include "coverforge/render.hpp"
#include "coverforge/robot_sim.hpp"

namespace cf = coverforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoPath = 3;
constexpr int kExitFailure = 4;

cf::GridPos parse_pos(const std::string& s) {
    const std::size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("position", "expected 'row,col', got '" + s + "'");
    try {
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("position", "expected 'row,col', got '" + s + "'");
    }
}

cf::PatternKind pattern_from(const std::string& s) {
    if (s == "vertical") return cf::PatternKind::Vertical;
    if (s == "horizontal") return cf::PatternKind::Horizontal;
    if (s == "diagonal") return cf::PatternKind::Diagonal;
    return cf::PatternKind::Spiral;
}

cf::PlannerKind planner_from(const std::string& s) {
    if (s == "dijkstra") return cf::PlannerKind::Dijkstra;
    if (s == "dfs") return cf::PlannerKind::Dfs;
    return cf::PlannerKind::AStar;
}

cf::Heuristic heuristic_from(const std::string& s) {
    if (s == "manhattan") return cf::Heuristic::Manhattan;
    if (s == "chebyshev") return cf::Heuristic::Chebyshev;
    return cf::Heuristic::Euclidean;
}

cf::ScenarioMode mode_from(const std::string& s) {
    return s == "three" ? cf::ScenarioMode::ThreeState : cf::ScenarioMode::FourState;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        cf::write_text_file(path, content);
}

std::vector<cf::GridPos> read_trajectory(const std::string& path) {
    const std::string text = cf::read_text_file(path);  // views below point into it
    std::vector<cf::GridPos> traj;
    for (std::string_view line : cf::detail::split_lines(text)) {
        if (line.empty()) continue;
        traj.push_back(parse_pos(std::string(line)));
    }
    return traj;
}

std::string trajectory_text(const std::vector<cf::GridPos>& traj) {
    std::string out;
    for (const cf::GridPos& p : traj)
        out += std::to_string(p.row) + "," + std::to_string(p.col) + "\n";
    return out;
}

// Shared coverage knobs for `cover` and `bench`.
struct ConfigFlags {
    std::string planner = "astar";
    std::string heuristic = "euclidean";
    int connectivity = 8;
    bool unknown_passable = true;
    double partial_cost_factor = 1.5;
    int radius = 2;
    bool switch_on_replan = true;
    long max_ticks = 0;
    double minutes_per_tick = 0.05;
    bool tick_per_turn = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--planner", planner, "Planner: astar, dijkstra or dfs")
            ->check(CLI::IsMember({"astar", "dijkstra", "dfs"}));
        cmd->add_option("--heuristic", heuristic, "A* heuristic")
            ->check(CLI::IsMember({"euclidean", "manhattan", "chebyshev"}));
        cmd->add_option("--connectivity", connectivity, "4 or 8 neighbours")
            ->check(CLI::IsMember({4, 8}));
        cmd->add_flag("--unknown-passable,!--no-unknown-passable", unknown_passable,
                      "Treat unexplored cells as traversable (default on)");
        cmd->add_option("--partial-cost-factor", partial_cost_factor,
                        "Cost multiplier for entering a partial cell");
        cmd->add_option("--radius", radius, "Sensor radius in cells (Chebyshev)");
        cmd->add_flag("--switch,!--no-switch", switch_on_replan,
                      "Switch planner cyclically on replans (default on)");
        cmd->add_option("--max-ticks", max_ticks, "Tick budget, 0 = rows*cols*50");
        cmd->add_option("--minutes-per-tick", minutes_per_tick, "Report scaling");
        cmd->add_flag("--tick-per-turn", tick_per_turn, "Charge one extra tick per turn");
    }

    cf::CoverageConfig to_config(const std::string& mode) const {
        cf::CoverageConfig cfg;
        cfg.mode = mode_from(mode);
        cfg.planner = planner_from(planner);
        cfg.policy.connectivity =
            connectivity == 4 ? cf::Connectivity::Four : cf::Connectivity::Eight;
        cfg.policy.unknown_passable = unknown_passable;
        cfg.policy.partial_cost_factor = partial_cost_factor;
        cfg.policy.heuristic = heuristic_from(heuristic);
        cfg.sensor_radius = radius;
        cfg.switch_on_replan = switch_on_replan;
        cfg.max_ticks = max_ticks;
        cfg.minutes_per_tick = minutes_per_tick;
        cfg.tick_per_turn = tick_per_turn;
        return cfg;
    }
};

std::string summary_line(const cf::GroundTruthField& f) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "rows=%d cols=%d k=%d obstacle_fraction=%.4f", f.rows(),
                  f.cols(), f.k, cf::obstacle_fraction(f));
    return buf;
}

int cmd_generate(const std::string& generator, int rows, int cols, int k, double threshold,
                 std::uint64_t seed, int obstacles, const std::string& kind,
                 const std::string& output) {
    cf::GroundTruthField field;
    if (generator == "random")
        field = cf::gen_random(rows, cols, threshold, seed, k);
    else if (generator == "irregular")
        field = cf::gen_irregular(rows, cols, obstacles, seed, k);
    else if (generator == "maze-backtracker")
        field = cf::gen_maze_backtracker(rows, cols, seed);
    else if (generator == "maze-dfs")
        field = cf::gen_maze_dfs(rows, cols, seed);
    else
        field = cf::gen_pattern(pattern_from(kind), rows, cols);

    if (output.empty()) {
        std::cout << cf::serialize_field(field);
        std::cerr << summary_line(field) << "\n";
    } else {
        cf::save_field(field, output);
        std::cout << summary_line(field) << "\n";
    }
    return kExitOk;
}

int cmd_plan(const std::string& field_path, const std::string& algo, const std::string& start_s,
             const std::string& goal_s, const ConfigFlags& flags, bool dump_path) {
    const cf::GroundTruthField field = cf::load_field(field_path);
    const cf::GridMap belief = cf::fully_sensed_belief(field);
    const cf::TraversalPolicy policy = flags.to_config("four").policy;
    const cf::GridPos start = parse_pos(start_s);
    const cf::GridPos goal = parse_pos(goal_s);
    const cf::PlanResult res = cf::plan(planner_from(algo), belief, start, goal, policy);
    if (!res.found()) {
        std::cout << "planner=" << algo << " no-path expanded=" << res.expanded << "\n";
        return kExitNoPath;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "planner=%s cost=%.6f expanded=%zu cells=%zu", algo.c_str(),
                  res.path->cost, res.expanded, res.path->cells.size());
    std::cout << buf << "\n";
    if (dump_path) std::cout << trajectory_text(res.path->cells);
    return kExitOk;
}

void print_report(const cf::CoverageReport& rep) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", rep.coverage_percent);
    std::cout << "coverage_percent=" << buf << "\n";
    std::cout << "ticks=" << rep.ticks << "\n";
    std::snprintf(buf, sizeof buf, "%.2f", rep.minutes);
    std::cout << "minutes=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.4f", rep.path_length);
    std::cout << "path_length=" << buf << "\n";
    std::cout << "turns=" << rep.turns << "\n";
    std::cout << "replans=" << rep.replans << "\n";
    std::cout << "planner_switches=" << rep.planner_switches << "\n";
    std::cout << "partial_cells=" << rep.partial_cells_identified << "\n";
    std::cout << "revisits=" << rep.revisits << "\n";
    std::cout << "complete=" << (rep.complete ? 1 : 0) << "\n";
    std::cout << "trajectory_cells=" << rep.trajectory.size() << "\n";
}

int cmd_cover(const std::string& field_path, const std::string& start_s, const std::string& mode,
              const ConfigFlags& flags, bool known_field, const std::string& resume_path,
              long checkpoint_at, const std::string& checkpoint_out,
              const std::string& trajectory_out, bool render_final) {
    const cf::GroundTruthField field = cf::load_field(field_path);
    const cf::CoverageConfig cfg = flags.to_config(mode);
    std::optional<cf::Simulator> sim;
    if (!resume_path.empty()) {
        sim.emplace(cf::Simulator::restore(cf::load_checkpoint(resume_path), field, cfg));
    } else {
        std::optional<cf::GridMap> known;
        if (known_field)
            known = cf::fully_sensed_belief(
                field, cf::SenseOptions{cfg.mode == cf::ScenarioMode::ThreeState});
        sim.emplace(field, parse_pos(start_s), cfg, std::move(known));
    }
    long steps = 0;
    while (!sim->complete()) {
        sim->step();
        ++steps;
        if (checkpoint_at > 0 && steps == checkpoint_at && !checkpoint_out.empty())
            cf::save_checkpoint(sim->checkpoint(), checkpoint_out);
    }
    if (checkpoint_at == 0 && !checkpoint_out.empty())
        cf::save_checkpoint(sim->checkpoint(), checkpoint_out);
    const cf::CoverageReport rep = sim->report();
    print_report(rep);
    if (!trajectory_out.empty()) cf::write_text_file(trajectory_out, trajectory_text(rep.trajectory));
    if (render_final) std::cout << cf::render_belief(sim->belief(), &rep.trajectory);
    return kExitOk;
}

int cmd_bench(const cf::BenchSpec& spec, const std::string& csv_out) {
    const cf::BenchResult result = cf::run_bench(spec);
    std::cout << (spec.format == cf::BenchFormat::Csv ? cf::bench_csv(result)
                                                      : cf::bench_markdown(result));
    if (!csv_out.empty()) cf::write_text_file(csv_out, cf::bench_csv(result));
    return kExitOk;
}

int cmd_render(const std::string& field_path, const std::string& checkpoint_path,
               const std::string& trajectory_path, bool with_trajectory,
               const std::string& format, const std::string& output) {
    cf::RenderFormat fmt = cf::RenderFormat::Ascii;
    if (format == "pgm") fmt = cf::RenderFormat::Pgm;
    if (format == "svg") fmt = cf::RenderFormat::Svg;
    std::string content;
    if (!checkpoint_path.empty()) {
        const cf::SimCheckpoint ck = cf::load_checkpoint(checkpoint_path);
        const std::vector<cf::GridPos>* traj =
            with_trajectory ? &ck.engine.trajectory : nullptr;
        content = cf::render_belief(ck.engine.map, traj, fmt);
    } else {
        const cf::GroundTruthField field = cf::load_field(field_path);
        std::vector<cf::GridPos> traj;
        if (!trajectory_path.empty()) traj = read_trajectory(trajectory_path);
        content = cf::render_field(field, trajectory_path.empty() ? nullptr : &traj, fmt);
    }
    write_output(output, content);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cover-forge: coverage path planning over grid-decomposed fields"};
    app.require_subcommand(1);

    std::function<int()> action;

    // generate ---------------------------------------------------------------
    auto* generate = app.add_subcommand("generate", "Generate a ground-truth field file");
    {
        static std::string generator, kind = "spiral", output;
        static int rows = 25, cols = 50, k = 1, obstacles = 2;
        static double threshold = 0.2;
        static std::uint64_t seed = 0;
        generate->add_option("generator", generator, "random, irregular, maze-backtracker, maze-dfs or pattern")
            ->required()
            ->check(CLI::IsMember({"random", "irregular", "maze-backtracker", "maze-dfs", "pattern"}));
        generate->add_option("--rows", rows, "Coarse rows (default 25)");
        generate->add_option("--cols", cols, "Coarse columns (default 50)");
        generate->add_option("--k", k, "Fine sub-cells per coarse cell side");
        generate->add_option("--threshold", threshold, "Obstacle probability for random (default 0.2)");
        generate->add_option("--seed", seed, "Generator seed");
        generate->add_option("--obstacles", obstacles, "Blob count for irregular");
        generate->add_option("--kind", kind, "Pattern kind")
            ->check(CLI::IsMember({"vertical", "horizontal", "diagonal", "spiral"}));
        generate->add_option("-o,--output", output, "Output file (.field or .pgm); stdout if omitted");
        generate->callback([&] {
            action = [=] {
                return cmd_generate(generator, rows, cols, k, threshold, seed, obstacles, kind,
                                    output);
            };
        });
    }

    // plan --------------------------------------------------------------------
    auto* plan = app.add_subcommand("plan", "Plan a point-to-point path on a field");
    {
        static std::string field, algo = "astar", start = "0,0", goal;
        static bool dump_path = false;
        static ConfigFlags flags;
        plan->add_option("--field", field, "Field file")->required();
        plan->add_option("--algo", algo, "astar, dijkstra or dfs")
            ->check(CLI::IsMember({"astar", "dijkstra", "dfs"}));
        plan->add_option("--start", start, "Start cell 'row,col'");
        plan->add_option("--goal", goal, "Goal cell 'row,col'")->required();
        plan->add_flag("--dump-path", dump_path, "Print the path cells");
        flags.add_to(plan);
        plan->callback([&] {
            action = [=] { return cmd_plan(field, algo, start, goal, flags, dump_path); };
        });
    }

    // cover -------------------------------------------------------------------
    auto* cover = app.add_subcommand("cover", "Run a coverage simulation on a field");
    {
        static std::string field, start = "0,0", mode = "four", resume, checkpoint_out,
                           trajectory_out;
        static bool known_field = false, render_final = false;
        static long checkpoint_at = 0;
        static ConfigFlags flags;
        cover->add_option("--field", field, "Field file")->required();
        cover->add_option("--start", start, "Start cell 'row,col'");
        cover->add_option("--mode", mode, "three (scenario 1) or four (scenario 2)")
            ->check(CLI::IsMember({"three", "four"}));
        cover->add_flag("--known-field", known_field,
                        "Skip the mapping pass; start with a fully interpreted map");
        cover->add_option("--resume", resume, "Resume from a checkpoint file");
        cover->add_option("--checkpoint-at", checkpoint_at,
                          "Write a checkpoint after this many simulator steps");
        cover->add_option("--checkpoint-out", checkpoint_out,
                          "Checkpoint file path (at --checkpoint-at, or at completion)");
        cover->add_option("--trajectory-out", trajectory_out, "Write trajectory 'row,col' lines");
        cover->add_flag("--render", render_final, "Print an ASCII render of the final belief");
        flags.add_to(cover);
        cover->callback([&] {
            action = [=] {
                return cmd_cover(field, start, mode, flags, known_field, resume, checkpoint_at,
                                 checkpoint_out, trajectory_out, render_final);
            };
        });
    }

    // bench -------------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Run a benchmark matrix of coverage simulations");
    {
        static std::string gen = "irregular", field, kind = "spiral", format = "markdown",
                           csv_out, start = "0,0";
        static int rows = 20, cols = 20, k = 3, obstacles = 2, runs = 3;
        static double threshold = 0.2;
        static std::uint64_t seed_base = 0;
        static std::vector<std::uint64_t> seeds;
        static std::vector<std::string> modes = {"three", "four"};
        static std::vector<std::string> planners = {"astar"};
        static ConfigFlags flags;
        bench->add_option("--gen", gen, "Field source")
            ->check(CLI::IsMember(
                {"random", "irregular", "maze-backtracker", "maze-dfs", "pattern", "file"}));
        bench->add_option("--field", field, "Field file when --gen file");
        bench->add_option("--rows", rows);
        bench->add_option("--cols", cols);
        bench->add_option("--k", k);
        bench->add_option("--threshold", threshold);
        bench->add_option("--obstacles", obstacles);
        bench->add_option("--kind", kind)
            ->check(CLI::IsMember({"vertical", "horizontal", "diagonal", "spiral"}));
        bench->add_option("--seeds", seeds, "Comma-separated seed list; one run per seed")
            ->delimiter(',');
        bench->add_option("--seed", seed_base, "Base seed when --seeds is not given");
        bench->add_option("--runs", runs, "Runs per variant");
        bench->add_option("--modes", modes, "Scenario modes to compare")->delimiter(',');
        bench->add_option("--planners", planners, "Planner list")->delimiter(',');
        bench->add_option("--format", format, "Table format on stdout")
            ->check(CLI::IsMember({"csv", "markdown"}));
        bench->add_option("--start", start, "Start cell 'row,col'");
        bench->add_option("-o,--output", csv_out, "Also write the CSV to this file");
        flags.add_to(bench);
        bench->callback([&] {
            action = [=] {
                cf::BenchSpec spec;
                if (gen == "random") spec.source.kind = cf::FieldSourceKind::Random;
                else if (gen == "irregular") spec.source.kind = cf::FieldSourceKind::Irregular;
                else if (gen == "maze-backtracker")
                    spec.source.kind = cf::FieldSourceKind::MazeBacktracker;
                else if (gen == "maze-dfs") spec.source.kind = cf::FieldSourceKind::MazeDfs;
                else if (gen == "pattern") spec.source.kind = cf::FieldSourceKind::Pattern;
                else spec.source.kind = cf::FieldSourceKind::File;
                spec.source.rows = rows;
                spec.source.cols = cols;
                spec.source.k = k;
                spec.source.threshold = threshold;
                spec.source.n_obstacles = obstacles;
                spec.source.pattern = pattern_from(kind);
                spec.source.path = field;
                if (!seeds.empty()) {
                    spec.source.seeds = seeds;
                    spec.runs = static_cast<int>(seeds.size());
                } else {
                    spec.runs = runs;
                    spec.source.seeds.clear();
                    for (int i = 0; i < runs; ++i) spec.source.seeds.push_back(seed_base + i);
                }
                for (const std::string& m : modes)
                    for (const std::string& p : planners) {
                        ConfigFlags vf = flags;
                        vf.planner = p;
                        spec.variants.push_back(vf.to_config(m));
                    }
                spec.start = parse_pos(start);
                spec.format = format == "csv" ? cf::BenchFormat::Csv : cf::BenchFormat::Markdown;
                return cmd_bench(spec, csv_out);
            };
        });
    }

    // render ------------------------------------------------------------------
    auto* render = app.add_subcommand("render", "Render a field or checkpoint");
    {
        static std::string field, checkpoint, trajectory, format = "ascii", output;
        static bool with_trajectory = false;
        render->add_option("--field", field, "Field file");
        render->add_option("--checkpoint", checkpoint, "Checkpoint file (renders the belief)");
        render->add_option("--trajectory", trajectory, "Trajectory file to overlay");
        render->add_flag("--with-trajectory", with_trajectory,
                         "Overlay the checkpoint's own trajectory");
        render->add_option("--format", format, "ascii, pgm or svg")
            ->check(CLI::IsMember({"ascii", "pgm", "svg"}));
        render->add_option("-o,--output", output, "Output file; stdout if omitted");
        render->callback([&] {
            action = [=] {
                if (field.empty() == checkpoint.empty())
                    throw CLI::ValidationError("render",
                                               "exactly one of --field/--checkpoint required");
                return cmd_render(field, checkpoint, trajectory, with_trajectory, format, output);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
