#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "atam/model.hpp"

namespace atam {

struct BoundingBox {
  int min_row, max_row, min_col, max_col;

  bool contains(Site s) const {
    return s.row >= min_row && s.row <= max_row && s.col >= min_col && s.col <= max_col;
  }
  std::int64_t area() const {
    return std::int64_t{max_row - min_row + 1} * std::int64_t{max_col - min_col + 1};
  }
};

enum class NondeterminismPolicy { Fail, PickLowestTileId };
enum class SiteOrder { Lexicographic, Insertion };

struct SimConfig {
  std::int64_t max_steps = 10'000'000;
  std::optional<BoundingBox> bounding_box;
  NondeterminismPolicy on_nondeterminism = NondeterminismPolicy::Fail;
  SiteOrder site_order = SiteOrder::Lexicographic;
};

enum class HaltReason { Quiescent, StepCap, BoxFull };

const char* to_string(HaltReason r);

struct AmbiguousSite {
  Site site;
  std::vector<TileId> candidates;
};

struct AttachEvent {
  std::int64_t step;
  Site site;
  TileId tile;
};

struct SimResult {
  explicit SimResult(Assembly a) : assembly(std::move(a)) {}

  Assembly assembly;
  std::int64_t steps = 0;
  HaltReason halted_reason = HaltReason::Quiescent;
  std::vector<AmbiguousSite> nondeterministic_sites;
  std::vector<AttachEvent> events;
  double wall_time = 0.0;  // seconds
};

class NondeterminismError : public std::runtime_error {
 public:
  explicit NondeterminismError(AmbiguousSite where);
  const AmbiguousSite& where() const { return where_; }

 private:
  AmbiguousSite where_;
};

/// Empty sites 4-adjacent to the assembly, clipped to `box` when given.
std::set<Site> frontier_sites(const Assembly& assembly, const std::optional<BoundingBox>& box = {});

/// Tile ids whose attach strength at `site` reaches the temperature, ascending.
/// Throws std::invalid_argument if the site is occupied.
std::vector<TileId> eligible_tiles(const TileSystem& system, const Assembly& assembly, Site site);

/// Grows the seed (placed at (0,0)) until no site admits a tile, the step cap is hit, or the box
/// is full. Throws ValidationError for invalid systems, std::invalid_argument for a bad config and
/// NondeterminismError under the Fail policy.
SimResult run(const TileSystem& system, const SimConfig& cfg = {});

struct DirectednessReport {
  bool directed = true;
  std::vector<AmbiguousSite> offending;
};

/// Runs to completion and reports every site that admitted more than one tile type.
DirectednessReport check_directed(const TileSystem& system, const SimConfig& cfg = {});

/// One `step row col tile_id` line per attachment.
void write_event_log(std::ostream& os, const std::vector<AttachEvent>& events);

}  // namespace atam
