#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "atam/model.hpp"

namespace atam {

/// ((x - 1) mod n) + 1 with a non-negative modulus, so the result lies in 1..n.
/// Throws std::invalid_argument when n < 1.
std::int64_t wrap1(std::int64_t x, std::int64_t n);

struct UniformShift {
  std::int64_t shift = 0;
};
struct PerRowShift {
  std::vector<std::int64_t> shifts;  // one per row above the base row: N - 1 values
};

/// Base row length plus either one shift for every row or one shift per row.
struct ShiftSpec {
  int n = 2;
  std::variant<UniformShift, PerRowShift> kind;
};

enum class TileRole { Seed, BaseRow, BaseColumn, Rule };

const char* to_string(TileRole role);

/// What each generated tile is for. `label` is the pattern value the tile stands for; rule tiles
/// also record their south input, east input and output.
struct TileInfo {
  TileRole role = TileRole::Rule;
  int label = 0;
  int input = 0;
  int east_input = 0;
  int output = 0;
};

struct GeneratorLayout {
  int n = 0;
  std::vector<TileInfo> tiles;  // indexed by tile id - 1

  const TileInfo& info(TileId id) const { return tiles.at(id - 1); }
};

struct GeneratedSystem {
  TileSystem system;
  GeneratorLayout layout;
};

// Group names written as tile-file comments.
inline constexpr const char* kSeedGroup = "seed tile";
inline constexpr const char* kBaseRowGroup = "First row. (bottom boundary row)";
inline constexpr const char* kBaseColumnGroup = "First column. (Right most column)";
inline constexpr const char* kRuleGroup = "Rule tiles";

inline constexpr Argb kOddLabelColor = argb_from_bits(0xFE0000FFu);   // blue
inline constexpr Argb kEvenLabelColor = argb_from_bits(0xFEFF0000u);  // red

/// Display color for a pattern label: odd labels blue, even labels red.
Argb label_color(std::int64_t label);

/// Every row is the row below it cyclically shifted by `shift`. 3N - 1 tiles.
/// Throws std::invalid_argument when n < 2.
GeneratedSystem gen_uniform(int n, std::int64_t shift);

/// Row r is row r - 1 shifted by shifts[r - 1]. One set of N rule tiles per distinct shift
/// value mod N. Throws std::invalid_argument when n < 2 or shifts.size() != n - 1.
GeneratedSystem gen_nonuniform(int n, const std::vector<std::int64_t>& shifts);

/// gen_nonuniform with the base row cyclically rotated by `rotate_k` first.
GeneratedSystem gen_transform(int n, const std::vector<std::int64_t>& shifts, std::int64_t rotate_k);

/// Pattern label expected at (row, col) of the uniform N x N square.
/// Throws std::invalid_argument for coordinates outside the square.
std::int64_t uniform_oracle(int n, std::int64_t shift, int row, int col);

/// Pattern label expected at (row, col) of the non-uniform square: the base row shifted by
/// the running sum of shifts.
std::int64_t nonuniform_oracle(int n, const std::vector<std::int64_t>& shifts, int row, int col);

/// Distinct shift values mod n.
std::vector<std::int64_t> distinct_shifts(int n, const std::vector<std::int64_t>& shifts);

/// Exact number of tile types the generators emit: 3N - 1, or 1 + 2(N - 1) + N * d.
std::int64_t expected_tile_count(const ShiftSpec& spec);

/// The published per-row total 2(N - 1) + N * d, which leaves out the seed tile.
std::int64_t published_nonuniform_count(int n, std::int64_t distinct);

}  // namespace atam
