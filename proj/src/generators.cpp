#include "atam/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace atam {

std::int64_t wrap1(std::int64_t x, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("wrap1: modulus must be at least 1");
  std::int64_t r = (x - 1) % n;
  if (r < 0) r += n;
  return r + 1;
}

const char* to_string(TileRole role) {
  switch (role) {
    case TileRole::Seed: return "seed";
    case TileRole::BaseRow: return "base_row";
    case TileRole::BaseColumn: return "base_column";
    case TileRole::Rule: return "rule";
  }
  return "unknown";
}

Argb label_color(std::int64_t label) { return label % 2 != 0 ? kOddLabelColor : kEvenLabelColor; }

namespace {

std::int64_t reduce(std::int64_t s, int n) {
  std::int64_t r = s % n;
  return r < 0 ? r + n : r;
}

void check_args(int n, const std::vector<std::int64_t>& shifts) {
  if (n < 2) throw std::invalid_argument("base row length must be at least 2, got " + std::to_string(n));
  if (shifts.size() != static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("expected " + std::to_string(n - 1) + " row shifts, got " +
                                std::to_string(shifts.size()));
  }
}

GlueLabel glue(std::int64_t v) { return GlueLabel{static_cast<std::uint32_t>(v)}; }

// Layout:
//   seed         {N+1, 0, 0, N+1}
//   base row     {label, Y, 0, Y+1}       Y = X+N-1, X = 2..N, chained westward by glues N+1..2N
//   base column  {Y+1, 0, Y, T_r}         chained northward; W glue carries the row's first label
//   rule         {Op, Op-1, Op+s, Op}     one set per distinct shift s
// Pattern glues 1..N bind with strength 1, boundary glues N+1..2N with strength 2, at temperature 2.
GeneratedSystem build_shift_system(int n, const std::vector<std::int64_t>& shifts, std::int64_t rotate_k) {
  check_args(n, shifts);
  GeneratedSystem out;
  TileSystem& sys = out.system;
  out.layout.n = n;

  std::vector<int> strengths(static_cast<std::size_t>(2 * n));
  for (int g = 1; g <= 2 * n; ++g) strengths[g - 1] = g <= n ? 1 : 2;
  sys.strengths = GlueStrengthTable(std::move(strengths));
  sys.temperature = 2;

  auto add = [&](const char* group, std::array<std::int64_t, 4> e, TileInfo info) {
    TileType t;
    t.id = static_cast<TileId>(sys.tiles.size() + 1);
    t.label = group;
    t.edges = {glue(e[0]), glue(e[1]), glue(e[2]), glue(e[3])};
    t.color = label_color(info.label);
    sys.tiles.push_back(std::move(t));
    out.layout.tiles.push_back(info);
  };

  add(kSeedGroup, {n + 1, 0, 0, n + 1}, {TileRole::Seed, n + 1});
  sys.seed_id = 1;

  const std::int64_t k = reduce(rotate_k, n);
  for (int x = 2; x <= n; ++x) {
    const int y = x + n - 1;
    const auto label = static_cast<int>(wrap1(x - k, n));
    add(kBaseRowGroup, {label, y, 0, y + 1}, {TileRole::BaseRow, label});
  }

  std::int64_t t = wrap1(1 - k, n);
  for (int x = 2; x <= n; ++x) {
    const int y = x + n - 1;
    t = wrap1(t - reduce(shifts[x - 2], n), n);
    add(kBaseColumnGroup, {y + 1, 0, y, t}, {TileRole::BaseColumn, static_cast<int>(t)});
  }

  for (std::int64_t s : distinct_shifts(n, shifts)) {
    for (int op = 1; op <= n; ++op) {
      const auto east = static_cast<int>(wrap1(op - 1, n));
      const auto south = static_cast<int>(wrap1(op + s, n));
      add(kRuleGroup, {op, east, south, op}, {TileRole::Rule, op, south, east, op});
    }
  }
  return out;
}

void check_square(int n, int row, int col) {
  if (n < 1 || row < 0 || col < 0 || row >= n || col >= n) {
    throw std::invalid_argument("(" + std::to_string(row) + "," + std::to_string(col) +
                                ") lies outside the " + std::to_string(n) + "x" + std::to_string(n) +
                                " square");
  }
}

}  // namespace

std::vector<std::int64_t> distinct_shifts(int n, const std::vector<std::int64_t>& shifts) {
  std::vector<std::int64_t> out;
  for (std::int64_t s : shifts) out.push_back(reduce(s, n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GeneratedSystem gen_uniform(int n, std::int64_t shift) {
  if (n < 2) throw std::invalid_argument("base row length must be at least 2, got " + std::to_string(n));
  return build_shift_system(n, std::vector<std::int64_t>(static_cast<std::size_t>(n - 1), shift), 0);
}

GeneratedSystem gen_nonuniform(int n, const std::vector<std::int64_t>& shifts) {
  return build_shift_system(n, shifts, 0);
}

GeneratedSystem gen_transform(int n, const std::vector<std::int64_t>& shifts, std::int64_t rotate_k) {
  return build_shift_system(n, shifts, rotate_k);
}

std::int64_t uniform_oracle(int n, std::int64_t shift, int row, int col) {
  check_square(n, row, col);
  if (row == 0) return col == 0 ? n + 1 : col + 1;
  return wrap1(col + 1 - row * reduce(shift, n), n);
}

std::int64_t nonuniform_oracle(int n, const std::vector<std::int64_t>& shifts, int row, int col) {
  check_square(n, row, col);
  if (shifts.size() != static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("expected " + std::to_string(n - 1) + " row shifts");
  }
  if (row == 0) return col == 0 ? n + 1 : col + 1;
  std::int64_t offset = 0;
  for (int j = 0; j < row; ++j) offset = reduce(offset + reduce(shifts[j], n), n);
  return wrap1(col + 1 - offset, n);
}

std::int64_t expected_tile_count(const ShiftSpec& spec) {
  const std::int64_t n = spec.n;
  if (std::holds_alternative<UniformShift>(spec.kind)) return 3 * n - 1;
  const auto& per_row = std::get<PerRowShift>(spec.kind);
  const auto d = static_cast<std::int64_t>(distinct_shifts(spec.n, per_row.shifts).size());
  return 1 + 2 * (n - 1) + n * d;
}

std::int64_t published_nonuniform_count(int n, std::int64_t distinct) {
  return 2 * (std::int64_t{n} - 1) + std::int64_t{n} * distinct;
}

}  // namespace atam
