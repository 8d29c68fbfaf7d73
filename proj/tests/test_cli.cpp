// Process-level tests of the cover-forge CLI. The binary path arrives via
// the COVER_FORGE_BIN environment variable set by CTest.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <catch2/catch.hpp>

#include "coverforge/field_gen.hpp"
#include "helpers.hpp"

namespace {

std::string bin_path() {
    const char* env = std::getenv("COVER_FORGE_BIN");
    return env ? env : "";
}

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    const std::string out_file = "cli_out_tmp.txt";
    const std::string cmd = "'" + bin_path() + "' " + args + " > " + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    try {
        r.out = coverforge::read_text_file(out_file);
    } catch (const std::exception&) {
    }
    std::remove(out_file.c_str());
    return r;
}

}  // namespace

TEST_CASE("cli is available to the test suite") {
    REQUIRE_FALSE(bin_path().empty());
}

TEST_CASE("generate writes a parseable field and a summary line") {
    const CmdResult r = run_cmd(
        "generate random --rows 25 --cols 50 --threshold 0.2 --seed 7 -o cli_gen_tmp.field");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("rows=25 cols=50 k=1") == 0);
    const auto f = coverforge::load_field("cli_gen_tmp.field");
    REQUIRE(f.rows() == 25);
    REQUIRE(f.cols() == 50);
    REQUIRE(coverforge::gen_random(25, 50, 0.2, 7) == f);
    std::remove("cli_gen_tmp.field");
}

TEST_CASE("generate rejects an unknown generator with usage exit code") {
    const CmdResult r = run_cmd("generate voronoi -o x.field");
    REQUIRE(r.exit_code == 2);
}

TEST_CASE("generated spiral pattern has connected free space") {
    const CmdResult r =
        run_cmd("generate pattern --kind spiral --rows 11 --cols 11 -o cli_spiral_tmp.field");
    REQUIRE(r.exit_code == 0);
    const auto f = coverforge::load_field("cli_spiral_tmp.field");
    REQUIRE(testutil::all_free_connected(f));
    std::remove("cli_spiral_tmp.field");
}

TEST_CASE("plan prints equal costs for astar and dijkstra") {
    const auto field = coverforge::gen_random(12, 12, 0.2, 5);
    coverforge::save_field(field, "cli_plan_tmp.field");
    // last free cell of the grid as the goal
    std::string goal;
    for (int r = 11; r >= 0 && goal.empty(); --r)
        for (int c = 11; c >= 0 && goal.empty(); --c)
            if (!field.at(r, c)) goal = std::to_string(r) + "," + std::to_string(c);
    const CmdResult a =
        run_cmd("plan --field cli_plan_tmp.field --algo astar --start 0,0 --goal " + goal);
    const CmdResult d =
        run_cmd("plan --field cli_plan_tmp.field --algo dijkstra --start 0,0 --goal " + goal);
    REQUIRE(a.exit_code == 0);
    REQUIRE(d.exit_code == 0);
    const auto cost_of = [](const std::string& s) {
        const auto pos = s.find("cost=");
        return s.substr(pos, s.find(' ', pos) - pos);
    };
    REQUIRE(cost_of(a.out) == cost_of(d.out));
    SECTION("byte-identical output across runs") {
        const CmdResult again =
            run_cmd("plan --field cli_plan_tmp.field --algo astar --start 0,0 --goal " + goal);
        REQUIRE(again.out == a.out);
    }
    std::remove("cli_plan_tmp.field");
}

TEST_CASE("plan reports no-path with exit 3") {
    // goal walled off in the bottom-right corner
    coverforge::write_text_file("cli_wall_tmp.field",
                                "field 1 4 4\n....\n....\n..##\n..#.\n");
    const CmdResult r = run_cmd("plan --field cli_wall_tmp.field --goal 3,3");
    REQUIRE(r.exit_code == 3);
    std::remove("cli_wall_tmp.field");
}

TEST_CASE("cover runs a simulation and reports") {
    coverforge::save_field(coverforge::gen_irregular(8, 8, 2, 3, 3), "cli_cover_tmp.field");
    const CmdResult r = run_cmd("cover --field cli_cover_tmp.field --mode four");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("coverage_percent=") != std::string::npos);
    REQUIRE(r.out.find("complete=1") != std::string::npos);
    SECTION("deterministic output") {
        const CmdResult again = run_cmd("cover --field cli_cover_tmp.field --mode four");
        REQUIRE(again.out == r.out);
    }
    std::remove("cli_cover_tmp.field");
}

TEST_CASE("render emits ascii art") {
    coverforge::write_text_file("cli_render_tmp.field", "field 1 3 3\n...\n...\n...\n");
    const CmdResult r = run_cmd("render --field cli_render_tmp.field");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out == "...\n...\n...\n");
    SECTION("unknown format rejected") {
        const CmdResult bad = run_cmd("render --field cli_render_tmp.field --format bmp");
        REQUIRE(bad.exit_code == 2);
    }
    std::remove("cli_render_tmp.field");
}

TEST_CASE("cover trajectory feeds render, checkpoints feed resume") {
    coverforge::save_field(coverforge::gen_irregular(8, 8, 1, 6, 3), "cli_flow_tmp.field");
    const CmdResult cover = run_cmd(
        "cover --field cli_flow_tmp.field --trajectory-out cli_flow_traj.txt "
        "--checkpoint-at 50 --checkpoint-out cli_flow_mid.ckpt");
    REQUIRE(cover.exit_code == 0);

    SECTION("trajectory overlay renders") {
        const CmdResult r =
            run_cmd("render --field cli_flow_tmp.field --trajectory cli_flow_traj.txt");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.out.find('*') != std::string::npos);
    }
    SECTION("checkpoint renders and resumes to the same report") {
        const CmdResult r = run_cmd("render --checkpoint cli_flow_mid.ckpt --with-trajectory");
        REQUIRE(r.exit_code == 0);
        const CmdResult resumed =
            run_cmd("cover --field cli_flow_tmp.field --resume cli_flow_mid.ckpt");
        REQUIRE(resumed.exit_code == 0);
        REQUIRE(resumed.out == cover.out);
    }
    SECTION("resume with a different config is rejected as a runtime failure") {
        const CmdResult r = run_cmd(
            "cover --field cli_flow_tmp.field --resume cli_flow_mid.ckpt --radius 5");
        REQUIRE(r.exit_code == 4);
    }
    std::remove("cli_flow_tmp.field");
    std::remove("cli_flow_traj.txt");
    std::remove("cli_flow_mid.ckpt");
}

TEST_CASE("bench generation failure exits 4") {
    const CmdResult r = run_cmd("bench --gen irregular --rows 2 --cols 2 --k 1 --seeds 1");
    REQUIRE(r.exit_code == 4);
}

TEST_CASE("bench emits one data row per run and variant") {
    const CmdResult r = run_cmd(
        "bench --gen irregular --rows 8 --cols 8 --k 3 --obstacles 1 --seeds 1 "
        "--modes three,four --format csv");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.rfind("run,mode,planner,", 0) == 0);
    // header + 2 data rows + 2 means
    REQUIRE(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}

TEST_CASE("missing required option is a usage error") {
    REQUIRE(run_cmd("plan --goal 1,1").exit_code == 2);
    REQUIRE(run_cmd("frobnicate").exit_code == 2);
}

TEST_CASE("pgm output by extension, file-backed bench, known-field cover") {
    REQUIRE(run_cmd("generate irregular --rows 6 --cols 6 --k 3 --obstacles 1 --seed 2 "
                    "-o cli_misc_tmp.pgm")
                .exit_code == 0);
    const auto f = coverforge::load_field("cli_misc_tmp.pgm");
    REQUIRE(f.k == 3);
    REQUIRE(f == coverforge::gen_irregular(6, 6, 1, 2, 3));

    const CmdResult bench = run_cmd(
        "bench --gen file --field cli_misc_tmp.pgm --runs 2 --modes four --format csv");
    REQUIRE(bench.exit_code == 0);
    REQUIRE(std::count(bench.out.begin(), bench.out.end(), '\n') == 4);

    const CmdResult known = run_cmd("cover --field cli_misc_tmp.pgm --known-field");
    REQUIRE(known.exit_code == 0);
    REQUIRE(known.out.find("complete=1") != std::string::npos);

    const CmdResult pgm = run_cmd("render --field cli_misc_tmp.pgm --format pgm");
    REQUIRE(pgm.exit_code == 0);
    REQUIRE(pgm.out.rfind("P2\n", 0) == 0);
    std::remove("cli_misc_tmp.pgm");
}
