#include <catch2/catch.hpp>

#include "coverforge/field_gen.hpp"
#include "helpers.hpp"

using namespace coverforge;

TEST_CASE("gen_random threshold limits") {
    SECTION("threshold 0 places no obstacles") {
        const GroundTruthField f = gen_random(8, 8, 0.0, 1);
        REQUIRE(f.blocked_fine_cells() == 0);
    }
    SECTION("threshold 1 blocks everything except the start cell") {
        const GroundTruthField f = gen_random(6, 7, 1.0, 1, 2);
        REQUIRE(f.free_fine_cells() == 4);  // the k*k start block
        REQUIRE(classify_coarse_cell(f, {0, 0}).is_free());
    }
    SECTION("obstacle fraction tracks the threshold at playground scale") {
        double sum = 0.0;
        for (Seed s = 0; s < 100; ++s) sum += obstacle_fraction(gen_random(25, 50, 0.2, s));
        const double mean = sum / 100.0;
        REQUIRE(mean > 0.17);
        REQUIRE(mean < 0.23);
    }
    SECTION("deterministic in the seed") {
        REQUIRE(gen_random(10, 10, 0.3, 77, 2) == gen_random(10, 10, 0.3, 77, 2));
        REQUIRE(gen_random(10, 10, 0.3, 77, 2) != gen_random(10, 10, 0.3, 78, 2));
    }
}

TEST_CASE("gen_irregular") {
    SECTION("always yields at least one partial cell for k>1") {
        for (Seed s = 0; s < 25; ++s) {
            const GroundTruthField f = gen_irregular(20, 20, 2, s, 3);
            bool partial = false;
            for (int r = 0; r < 20 && !partial; ++r)
                for (int c = 0; c < 20 && !partial; ++c)
                    partial = classify_coarse_cell(f, {r, c}).is_partial();
            REQUIRE(partial);
            REQUIRE(classify_coarse_cell(f, {0, 0}).is_free());
        }
    }
    SECTION("zero obstacles rejected") {
        REQUIRE_THROWS_AS(gen_irregular(20, 20, 0, 1, 3), std::invalid_argument);
    }
    SECTION("field too small to place blobs") {
        REQUIRE_THROWS_AS(gen_irregular(2, 2, 1, 1, 1), GenerationError);
    }
    SECTION("deterministic in the seed") {
        REQUIRE(gen_irregular(12, 12, 2, 5, 3) == gen_irregular(12, 12, 2, 5, 3));
    }
}

TEST_CASE("maze generators produce perfect mazes") {
    SECTION("recursive backtracker") {
        for (Seed s = 0; s < 10; ++s) {
            const GroundTruthField f = gen_maze_backtracker(11, 15, s);
            REQUIRE(testutil::is_perfect_maze(f));
            REQUIRE_FALSE(f.at(0, 0));
        }
    }
    SECTION("explicit-stack DFS") {
        for (Seed s = 0; s < 10; ++s) {
            const GroundTruthField f = gen_maze_dfs(11, 15, s);
            REQUIRE(testutil::is_perfect_maze(f));
            REQUIRE_FALSE(f.at(0, 0));
        }
    }
    SECTION("even dimensions still carve a perfect maze") {
        REQUIRE(testutil::is_perfect_maze(gen_maze_backtracker(10, 12, 3)));
        REQUIRE(testutil::is_perfect_maze(gen_maze_dfs(10, 12, 3)));
    }
    SECTION("generators disagree for the same seed") {
        for (Seed s = 1; s <= 5; ++s)
            REQUIRE(gen_maze_backtracker(9, 9, s) != gen_maze_dfs(9, 9, s));
    }
    SECTION("deterministic in the seed") {
        REQUIRE(gen_maze_backtracker(9, 9, 4) == gen_maze_backtracker(9, 9, 4));
        REQUIRE(gen_maze_dfs(9, 9, 4) == gen_maze_dfs(9, 9, 4));
    }
    SECTION("dimensions below 2 rejected") {
        REQUIRE_THROWS_AS(gen_maze_backtracker(1, 5, 0), std::invalid_argument);
        REQUIRE_THROWS_AS(gen_maze_dfs(5, 1, 0), std::invalid_argument);
    }
}

TEST_CASE("gen_pattern") {
    SECTION("vertical 5x5 walls at columns 1 and 3 with gaps") {
        const GroundTruthField f = gen_pattern(PatternKind::Vertical, 5, 5);
        for (int r = 0; r < 5; ++r) {
            REQUIRE(f.at(r, 1) == (r != 4));  // gap at the bottom
            REQUIRE(f.at(r, 3) == (r != 0));  // gap at the top
            REQUIRE_FALSE(f.at(r, 0));
            REQUIRE_FALSE(f.at(r, 2));
            REQUIRE_FALSE(f.at(r, 4));
        }
    }
    SECTION("horizontal is the transpose of vertical") {
        const GroundTruthField v = gen_pattern(PatternKind::Vertical, 7, 9);
        const GroundTruthField h = gen_pattern(PatternKind::Horizontal, 9, 7);
        for (int r = 0; r < 9; ++r)
            for (int c = 0; c < 7; ++c) REQUIRE(h.at(r, c) == v.at(c, r));
    }
    SECTION("spiral 11x11 has exactly one connected free region") {
        const GroundTruthField f = gen_pattern(PatternKind::Spiral, 11, 11);
        REQUIRE(f.blocked_fine_cells() > 0);
        REQUIRE(testutil::all_free_connected(f));
    }
    SECTION("every pattern keeps the free space connected from (0,0)") {
        for (const PatternKind kind : {PatternKind::Vertical, PatternKind::Horizontal,
                                       PatternKind::Diagonal, PatternKind::Spiral}) {
            const std::vector<std::pair<int, int>> sizes = {{3, 3},   {4, 7},   {8, 5},
                                                            {11, 11}, {12, 20}, {15, 4}};
            for (const auto& [rows, cols] : sizes) {
                const GroundTruthField f = gen_pattern(kind, rows, cols);
                INFO("kind=" << static_cast<int>(kind) << " rows=" << rows << " cols=" << cols);
                REQUIRE_FALSE(f.at(0, 0));
                REQUIRE(testutil::all_free_connected(f));
            }
        }
    }
    SECTION("seedless determinism") {
        REQUIRE(gen_pattern(PatternKind::Diagonal, 9, 12) ==
                gen_pattern(PatternKind::Diagonal, 9, 12));
    }
    SECTION("dimensions below 3 rejected") {
        REQUIRE_THROWS_AS(gen_pattern(PatternKind::Spiral, 2, 5), std::invalid_argument);
    }
}

TEST_CASE("ASCII field format") {
    SECTION("documented example parses") {
        const GroundTruthField f = parse_field("field 1 2 2\n.#\n..\n");
        REQUIRE(f.rows_fine == 2);
        REQUIRE(f.cols_fine == 2);
        REQUIRE(f.k == 1);
        REQUIRE(f.blocked_fine_cells() == 1);
        REQUIRE(f.at(0, 1));
    }
    SECTION("ragged row reports its line number") {
        try {
            parse_field("field 1 2 2\n.#\n.\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line() == 3);
        }
    }
    SECTION("illegal character reports its line number") {
        try {
            parse_field("field 1 2 2\n.#\n.x\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line() == 3);
            REQUIRE(std::string(e.what()).find("illegal character") != std::string::npos);
        }
    }
    SECTION("missing or malformed header") {
        REQUIRE_THROWS_AS(parse_field(""), ParseError);
        REQUIRE_THROWS_AS(parse_field("grid 1 2 2\n..\n..\n"), ParseError);
        REQUIRE_THROWS_AS(parse_field("field 2 3 3\n...\n...\n...\n"), ParseError);  // k mismatch
    }
    SECTION("truncated input and trailing garbage rejected") {
        REQUIRE_THROWS_AS(parse_field("field 1 3 2\n..\n..\n"), ParseError);
        REQUIRE_THROWS_AS(parse_field("field 1 2 2\n..\n..\n..\n"), ParseError);
    }
    SECTION("round-trips bit-exactly over generated fields") {
        for (Seed s = 0; s < 20; ++s) {
            const GroundTruthField f = s % 2 == 0 ? gen_random(7, 9, 0.3, s, 2)
                                                  : gen_irregular(8, 8, 2, s, 3);
            const std::string text = serialize_field(f);
            REQUIRE(parse_field(text) == f);
            REQUIRE(serialize_field(parse_field(text)) == text);
        }
    }
}

TEST_CASE("PGM field format") {
    SECTION("round-trips through serialize/parse") {
        const GroundTruthField f = gen_irregular(6, 6, 1, 11, 3);
        const std::string pgm = serialize_pgm(f);
        REQUIRE(parse_pgm(pgm) == f);
        REQUIRE(serialize_pgm(parse_pgm(pgm)) == pgm);
    }
    SECTION("k comment is honoured") {
        const GroundTruthField f = parse_pgm("P2\n# k=2\n2 2\n255\n0 255 255 0\n");
        REQUIRE(f.k == 2);
        REQUIRE(f.at(0, 0));
        REQUIRE_FALSE(f.at(0, 1));
    }
    SECTION("bad magic rejected") {
        REQUIRE_THROWS_AS(parse_pgm("P5\n2 2\n255\n0 0 0 0\n"), ParseError);
    }
    SECTION("sample count mismatch rejected") {
        REQUIRE_THROWS_AS(parse_pgm("P2\n2 2\n255\n0 0 0\n"), ParseError);
    }
}
