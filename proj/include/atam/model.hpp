#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace atam {

// Edge order is fixed: {N E S W}.
enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::North, Direction::East,
                                                         Direction::South, Direction::West};

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

/// A glue label. Label 0 is the null glue: it never binds, not even to another 0.
struct GlueLabel {
  std::uint32_t value = 0;

  constexpr bool is_null() const { return value == 0; }
  auto operator<=>(const GlueLabel&) const = default;
};

/// Two glues bind only when both are the same non-null label.
constexpr bool glues_bind(GlueLabel a, GlueLabel b) { return !a.is_null() && a == b; }

using TileId = std::uint32_t;

/// Signed 32-bit ARGB, stored exactly as it appears in tile files.
using Argb = std::int32_t;

constexpr Argb argb_from_bits(std::uint32_t bits) { return static_cast<Argb>(bits); }
constexpr std::uint32_t argb_bits(Argb c) { return static_cast<std::uint32_t>(c); }

struct TileType {
  TileId id = 0;
  std::string label;
  std::array<GlueLabel, 4> edges{};
  Argb color = 0;

  GlueLabel edge(Direction d) const { return edges[static_cast<std::size_t>(d)]; }
  bool operator==(const TileType&) const = default;
};

/// Strengths for glues 1..size(); glue 0 always has strength 0.
class GlueStrengthTable {
 public:
  GlueStrengthTable() = default;
  explicit GlueStrengthTable(std::vector<int> strengths) : strengths_(std::move(strengths)) {}

  /// Number of non-null glue labels with an entry.
  std::size_t size() const { return strengths_.size(); }
  bool has_entry(GlueLabel g) const { return g.is_null() || g.value <= strengths_.size(); }
  /// Strength of g; 0 for the null glue and for glues without an entry.
  int strength(GlueLabel g) const {
    if (g.is_null() || g.value > strengths_.size()) return 0;
    return strengths_[g.value - 1];
  }
  const std::vector<int>& values() const { return strengths_; }

  bool operator==(const GlueStrengthTable&) const = default;

 private:
  std::vector<int> strengths_;
};

/// A tile system (tiles, glue strengths, seed, temperature). Tile ids are dense 1..tiles.size()
/// and tiles[i].id == i + 1.
struct TileSystem {
  std::vector<TileType> tiles;
  GlueStrengthTable strengths;
  TileId seed_id = 1;
  int temperature = 2;
  // kTAM parameters, carried through files untouched.
  std::optional<double> gse;
  std::optional<double> gmc;

  const TileType& tile(TileId id) const { return tiles.at(id - 1); }
  bool has_tile(TileId id) const { return id >= 1 && id <= tiles.size(); }

  bool operator==(const TileSystem&) const = default;
};

struct Site {
  int row = 0;
  int col = 0;

  auto operator<=>(const Site&) const = default;
};

/// Neighbor of a site. Rows grow north; columns grow west, so east is col - 1.
constexpr Site neighbor(Site s, Direction d) {
  switch (d) {
    case Direction::North: return {s.row + 1, s.col};
    case Direction::East: return {s.row, s.col - 1};
    case Direction::South: return {s.row - 1, s.col};
    case Direction::West: return {s.row, s.col + 1};
  }
  return s;
}

struct SiteHash {
  std::size_t operator()(Site s) const noexcept {
    const auto r = static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.row));
    const auto c = static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.col));
    return std::hash<std::uint64_t>{}((r << 32) | c);
  }
};

/// Placed tiles grown from a seed. Tiles are only ever added.
class Assembly {
 public:
  Assembly(Site seed_site, TileId seed_tile);

  Site seed_site() const { return seed_site_; }
  std::size_t size() const { return placed_.size(); }
  bool occupied(Site s) const { return placed_.contains(s); }
  std::optional<TileId> at(Site s) const;
  const std::unordered_map<Site, TileId, SiteHash>& placed() const { return placed_; }

  /// Throws std::invalid_argument if s is occupied or not adjacent to a placed tile.
  void place(Site s, TileId tile);

  struct Bounds {
    int min_row, max_row, min_col, max_col;
  };
  Bounds bounds() const;

 private:
  std::unordered_map<Site, TileId, SiteHash> placed_;
  Site seed_site_;
};

/// Total strength of the bonds `tile` would form at the empty `site`.
/// Throws std::invalid_argument if the site is occupied.
int attach_strength(const TileSystem& system, const Assembly& assembly, Site site,
                    const TileType& tile);

enum class ViolationKind { MissingStrength, DuplicateId, DanglingSeed, BadTemperature, NegativeStrength };

struct Violation {
  ViolationKind kind;
  std::string message;
};

std::vector<Violation> validate_system(const TileSystem& system);

/// Thrown when an operation requires a valid tile system.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Throws ValidationError unless validate_system() reports nothing.
void require_valid(const TileSystem& system);

}  // namespace atam
