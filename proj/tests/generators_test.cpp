#include <doctest.h>

#include <random>

#include "atam/generators.hpp"
#include "atam/sim.hpp"
#include "oracles.hpp"

using namespace atam;

namespace {

using Edges = std::array<std::uint32_t, 4>;

std::vector<Edges> edges_of(const TileSystem& sys) {
  std::vector<Edges> out;
  for (const auto& t : sys.tiles) out.push_back({t.edges[0].value, t.edges[1].value, t.edges[2].value, t.edges[3].value});
  return out;
}

// Pattern labels of the assembled square, by (row, col).
std::vector<std::vector<int>> label_grid(const GeneratedSystem& gen) {
  const int n = gen.layout.n;
  const SimResult r = run(gen.system);
  std::vector<std::vector<int>> grid(n, std::vector<int>(n, -1));
  for (const auto& [site, id] : r.assembly.placed()) {
    REQUIRE(site.row >= 0);
    REQUIRE(site.row < n);
    REQUIRE(site.col >= 0);
    REQUIRE(site.col < n);
    grid[site.row][site.col] = gen.layout.info(id).label;
  }
  return grid;
}

}  // namespace

TEST_CASE("wrap1") {
  CHECK(wrap1(0, 4) == 4);
  CHECK(wrap1(5, 4) == 1);
  CHECK(wrap1(-1, 4) == 3);
  for (std::int64_t n = 1; n <= 6; ++n) {
    for (std::int64_t x = -8; x <= 8; ++x) CHECK(wrap1(x, n) == oracle::wrap1_slow(x, n));
  }
  CHECK_THROWS_AS(wrap1(3, 0), std::invalid_argument);
}

TEST_CASE("gen_uniform reproduces the N=4, S=1 listing") {
  const auto gen = gen_uniform(4, 1);
  const std::vector<Edges> listing = {{5, 0, 0, 5}, {2, 5, 0, 6}, {3, 6, 0, 7}, {4, 7, 0, 8},
                                      {6, 0, 5, 4}, {7, 0, 6, 3}, {8, 0, 7, 2}, {1, 4, 2, 1},
                                      {2, 1, 3, 2}, {3, 2, 4, 3}, {4, 3, 1, 4}};
  const std::vector<Argb> colors = {-33554177, -16842752, -33554177, -16842752, -16842752, -33554177,
                                    -16842752, -33554177, -16842752, -33554177, -16842752};
  CHECK(edges_of(gen.system) == listing);
  for (std::size_t i = 0; i < colors.size(); ++i) CHECK(gen.system.tiles[i].color == colors[i]);
  CHECK(gen.system.seed_id == 1);
  CHECK(gen.system.temperature == 2);
  CHECK(gen.system.strengths.values() == std::vector<int>{1, 1, 1, 1, 2, 2, 2, 2});
  CHECK(gen.layout.info(1).role == TileRole::Seed);
  CHECK(gen.layout.info(2).role == TileRole::BaseRow);
  CHECK(gen.layout.info(5).role == TileRole::BaseColumn);
  CHECK(gen.layout.info(8).role == TileRole::Rule);
  CHECK(gen.layout.info(8).input == 2);
  CHECK(gen.layout.info(8).east_input == 4);
  CHECK(gen.layout.info(8).output == 1);
}

TEST_CASE("gen_uniform small and paper-sized cases") {
  SUBCASE("N=2, S=0 is the identity shift") {
    const auto gen = gen_uniform(2, 0);
    CHECK(gen.system.tiles.size() == 5);
    for (const auto& info : gen.layout.tiles) {
      if (info.role == TileRole::Rule) CHECK(info.output == info.input);
    }
  }
  SUBCASE("N=6, S=2") {
    const auto gen = gen_uniform(6, 2);
    CHECK(gen.system.tiles.size() == 17);
    // base column W glues: T0 = 1, then T - 2 wrapped into 1..6
    std::vector<std::uint32_t> column;
    for (std::size_t i = 0; i < gen.layout.tiles.size(); ++i) {
      if (gen.layout.tiles[i].role == TileRole::BaseColumn) column.push_back(gen.system.tiles[i].edges[3].value);
    }
    CHECK(column == std::vector<std::uint32_t>{5, 3, 1, 5, 3});
  }
  SUBCASE("N below 2") { CHECK_THROWS_AS(gen_uniform(1, 0), std::invalid_argument); }
}

TEST_CASE("tile count is 3N-1") {
  for (int n = 2; n <= 64; ++n) {
    CHECK(gen_uniform(n, n / 3).system.tiles.size() == static_cast<std::size_t>(3 * n - 1));
    CHECK(expected_tile_count({n, UniformShift{1}}) == 3 * n - 1);
  }
  CHECK(expected_tile_count({4, UniformShift{1}}) == 11);
  CHECK(expected_tile_count({6, UniformShift{2}}) == 17);
}

TEST_CASE("uniform_oracle") {
  CHECK(uniform_oracle(4, 1, 1, 1) == 1);
  CHECK(uniform_oracle(4, 1, 1, 2) == 2);
  CHECK(uniform_oracle(4, 1, 1, 3) == 3);
  CHECK(uniform_oracle(4, 1, 2, 1) == 4);
  CHECK(uniform_oracle(4, 1, 0, 0) == 5);
  for (int r = 1; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) CHECK(uniform_oracle(5, 0, r, c) == c + 1);
  }
  for (int s = -7; s <= 14; ++s) {
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) CHECK(uniform_oracle(5, s, r, c) == uniform_oracle(5, ((s % 5) + 5) % 5, r, c));
    }
  }
  CHECK_THROWS_AS(uniform_oracle(4, 1, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_oracle(4, 1, 0, -1), std::invalid_argument);
}

TEST_CASE("uniform oracle matches the brute-force assembly of the listing") {
  const auto gen = gen_uniform(4, 1);
  const auto brute = oracle::brute_force_assemble(gen.system);
  REQUIRE(brute.placed.size() == 16);
  for (const auto& [rc, id] : brute.placed) {
    CHECK(gen.layout.info(id).label == uniform_oracle(4, 1, rc.first, rc.second));
  }
}

TEST_CASE("gen_nonuniform") {
  SUBCASE("N=6, S=[2,3,1,2,3]") {
    const auto gen = gen_nonuniform(6, {2, 3, 1, 2, 3});
    CHECK(distinct_shifts(6, {2, 3, 1, 2, 3}) == std::vector<std::int64_t>{1, 2, 3});
    CHECK(gen.system.tiles.size() == 29);
    std::size_t rules = 0;
    for (const auto& info : gen.layout.tiles) rules += info.role == TileRole::Rule;
    CHECK(rules == 18);
    CHECK(expected_tile_count({6, PerRowShift{{2, 3, 1, 2, 3}}}) == 29);
    CHECK(published_nonuniform_count(6, 3) == 28);
  }
  SUBCASE("N=2, S=[1]") { CHECK(gen_nonuniform(2, {1}).system.tiles.size() == 5); }
  SUBCASE("constant shifts equal the uniform system") {
    for (int n = 2; n <= 9; ++n) {
      for (int s = 0; s < n; ++s) {
        const auto a = gen_nonuniform(n, std::vector<std::int64_t>(n - 1, s));
        const auto b = gen_uniform(n, s);
        CHECK(a.system == b.system);
        CHECK(label_grid(a) == label_grid(b));
      }
    }
  }
  SUBCASE("wrong arity") {
    CHECK_THROWS_AS(gen_nonuniform(6, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(gen_nonuniform(1, {}), std::invalid_argument);
  }
  SUBCASE("negative shifts reduce mod N") {
    CHECK(gen_nonuniform(5, {-1, 4, -6, 9}).system == gen_nonuniform(5, {4, 4, 4, 4}).system);
  }
}

TEST_CASE("nonuniform_oracle") {
  const std::vector<std::int64_t> s = {2, 3, 1, 2, 3};
  // running offsets by direct summation
  std::vector<std::int64_t> offsets;
  std::int64_t sum = 0;
  for (auto v : s) offsets.push_back((sum += v) % 6);
  CHECK(offsets == std::vector<std::int64_t>{2, 5, 0, 2, 5});
  for (int c = 1; c < 6; ++c) CHECK(nonuniform_oracle(6, s, 3, c) == c + 1);
  for (int c = 0; c < 6; ++c) CHECK(nonuniform_oracle(6, s, 1, c) == oracle::wrap1_slow(c + 1 - 2, 6));

  const auto brute = oracle::brute_force_assemble(gen_nonuniform(6, s).system);
  const auto gen = gen_nonuniform(6, s);
  REQUIRE(brute.placed.size() == 36);
  for (const auto& [rc, id] : brute.placed) CHECK(gen.layout.info(id).label == nonuniform_oracle(6, s, rc.first, rc.second));
  CHECK_THROWS_AS(nonuniform_oracle(6, s, 6, 0), std::invalid_argument);
  CHECK_THROWS_AS(nonuniform_oracle(6, {1}, 1, 1), std::invalid_argument);
}

TEST_CASE("simulated labels follow the running shift sum") {
  std::mt19937 rng(2024);
  for (int n = 2; n <= 12; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::int64_t> shifts(n - 1);
      for (auto& v : shifts) v = std::uniform_int_distribution<int>(-2 * n, 2 * n)(rng);
      const auto gen = gen_nonuniform(n, shifts);
      const auto grid = label_grid(gen);
      std::int64_t offset = 0;
      for (int r = 1; r < n; ++r) {
        offset += shifts[r - 1];
        for (int c = 0; c < n; ++c) {
          CHECK(grid[r][c] == nonuniform_oracle(n, shifts, r, c));
          // row r is the base row pattern 1..N rotated by the running sum
          CHECK(grid[r][c] == oracle::wrap1_slow(c + 1 - offset, n));
        }
      }
    }
  }
}

TEST_CASE("gen_transform") {
  const std::vector<std::int64_t> s = {1, 1, 1};
  CHECK(gen_transform(4, s, 0).system == gen_nonuniform(4, s).system);
  CHECK(gen_transform(4, s, 4).system == gen_transform(4, s, 0).system);
  CHECK(gen_transform(4, s, -3).system == gen_transform(4, s, 1).system);

  const auto plain = label_grid(gen_nonuniform(4, s));
  const auto rotated = label_grid(gen_transform(4, s, 1));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r == 0 && c == 0) {
        CHECK(rotated[r][c] == plain[r][c]);
      } else {
        CHECK(rotated[r][c] == oracle::wrap1_slow(plain[r][c] - 1, 4));
      }
    }
  }
  CHECK(check_directed(gen_transform(7, {3, 1, 4, 1, 5, 9}, 3).system).directed);
}

TEST_CASE("label colors alternate by parity") {
  CHECK(label_color(1) == kOddLabelColor);
  CHECK(label_color(2) == kEvenLabelColor);
  const auto gen = gen_uniform(8, 3);
  for (std::size_t i = 0; i < gen.layout.tiles.size(); ++i) {
    CHECK(gen.system.tiles[i].color == label_color(gen.layout.tiles[i].label));
  }
}
