#include "atam/model.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace atam {

Assembly::Assembly(Site seed_site, TileId seed_tile) : seed_site_(seed_site) {
  placed_.emplace(seed_site, seed_tile);
}

std::optional<TileId> Assembly::at(Site s) const {
  auto it = placed_.find(s);
  if (it == placed_.end()) return std::nullopt;
  return it->second;
}

void Assembly::place(Site s, TileId tile) {
  if (occupied(s)) throw std::invalid_argument("site already occupied");
  bool adjacent = false;
  for (Direction d : kDirections) adjacent = adjacent || occupied(neighbor(s, d));
  if (!adjacent) throw std::invalid_argument("site is not adjacent to the assembly");
  placed_.emplace(s, tile);
}

Assembly::Bounds Assembly::bounds() const {
  Bounds b{seed_site_.row, seed_site_.row, seed_site_.col, seed_site_.col};
  for (const auto& [s, _] : placed_) {
    b.min_row = std::min(b.min_row, s.row);
    b.max_row = std::max(b.max_row, s.row);
    b.min_col = std::min(b.min_col, s.col);
    b.max_col = std::max(b.max_col, s.col);
  }
  return b;
}

int attach_strength(const TileSystem& system, const Assembly& assembly, Site site,
                    const TileType& tile) {
  if (assembly.occupied(site)) throw std::invalid_argument("attach_strength: site already occupied");
  int total = 0;
  for (Direction d : kDirections) {
    auto other = assembly.at(neighbor(site, d));
    if (!other) continue;
    const GlueLabel mine = tile.edge(d);
    const GlueLabel theirs = system.tile(*other).edge(opposite(d));
    if (glues_bind(mine, theirs)) total += system.strengths.strength(mine);
  }
  return total;
}

std::vector<Violation> validate_system(const TileSystem& system) {
  std::vector<Violation> out;
  std::set<TileId> seen;
  for (std::size_t i = 0; i < system.tiles.size(); ++i) {
    const TileType& t = system.tiles[i];
    if (!seen.insert(t.id).second || t.id != i + 1) {
      out.push_back({ViolationKind::DuplicateId, "tile at position " + std::to_string(i + 1) +
                                                     " has id " + std::to_string(t.id)});
    }
  }
  std::set<std::uint32_t> missing;
  for (const TileType& t : system.tiles) {
    for (GlueLabel g : t.edges) {
      if (!system.strengths.has_entry(g)) missing.insert(g.value);
    }
  }
  for (std::uint32_t g : missing) {
    out.push_back({ViolationKind::MissingStrength, "glue " + std::to_string(g) + " has no strength entry"});
  }
  const auto& vals = system.strengths.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] < 0) {
      out.push_back({ViolationKind::NegativeStrength,
                     "glue " + std::to_string(i + 1) + " has negative strength"});
    }
  }
  if (!system.has_tile(system.seed_id)) {
    out.push_back({ViolationKind::DanglingSeed, "seed " + std::to_string(system.seed_id) +
                                                    " does not name a tile"});
  }
  if (system.temperature < 1) {
    out.push_back({ViolationKind::BadTemperature,
                   "temperature " + std::to_string(system.temperature) + " is below 1"});
  }
  return out;
}

namespace {
std::string summarize(const std::vector<Violation>& violations) {
  std::string msg = "invalid tile system";
  for (const auto& v : violations) msg += "; " + v.message;
  return msg;
}
}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

void require_valid(const TileSystem& system) {
  auto v = validate_system(system);
  if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace atam
