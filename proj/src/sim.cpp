#include "atam/sim.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>

namespace atam {

const char* to_string(HaltReason r) {
  switch (r) {
    case HaltReason::Quiescent: return "quiescent";
    case HaltReason::StepCap: return "step-cap";
    case HaltReason::BoxFull: return "box-full";
  }
  return "unknown";
}

namespace {

std::string describe(const AmbiguousSite& a) {
  std::string msg = "site (" + std::to_string(a.site.row) + "," + std::to_string(a.site.col) +
                    ") admits tiles";
  for (TileId t : a.candidates) msg += " " + std::to_string(t);
  return msg;
}

// Tiles keyed by (direction, glue) on that side, for candidate lookup.
class GlueIndex {
 public:
  explicit GlueIndex(const TileSystem& system) {
    for (const TileType& t : system.tiles) {
      for (Direction d : kDirections) {
        GlueLabel g = t.edge(d);
        if (g.is_null() || system.strengths.strength(g) <= 0) continue;
        by_edge_[key(d, g)].push_back(t.id);
      }
    }
  }

  const std::vector<TileId>* find(Direction d, GlueLabel g) const {
    auto it = by_edge_.find(key(d, g));
    return it == by_edge_.end() ? nullptr : &it->second;
  }

 private:
  static std::uint64_t key(Direction d, GlueLabel g) {
    return (std::uint64_t{g.value} << 2) | static_cast<std::uint64_t>(d);
  }
  std::unordered_map<std::uint64_t, std::vector<TileId>> by_edge_;
};

std::vector<TileId> indexed_eligible(const TileSystem& system, const GlueIndex& index,
                                     const Assembly& assembly, Site site) {
  std::vector<TileId> candidates;
  for (Direction d : kDirections) {
    auto other = assembly.at(neighbor(site, d));
    if (!other) continue;
    GlueLabel facing = system.tile(*other).edge(opposite(d));
    if (const auto* ids = index.find(d, facing)) candidates.insert(candidates.end(), ids->begin(), ids->end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::erase_if(candidates, [&](TileId id) {
    return attach_strength(system, assembly, site, system.tile(id)) < system.temperature;
  });
  return candidates;
}

}  // namespace

NondeterminismError::NondeterminismError(AmbiguousSite where)
    : std::runtime_error("nondeterministic attachment: " + describe(where)), where_(std::move(where)) {}

std::set<Site> frontier_sites(const Assembly& assembly, const std::optional<BoundingBox>& box) {
  std::set<Site> out;
  for (const auto& [s, _] : assembly.placed()) {
    for (Direction d : kDirections) {
      Site n = neighbor(s, d);
      if (assembly.occupied(n)) continue;
      if (box && !box->contains(n)) continue;
      out.insert(n);
    }
  }
  return out;
}

std::vector<TileId> eligible_tiles(const TileSystem& system, const Assembly& assembly, Site site) {
  if (assembly.occupied(site)) throw std::invalid_argument("eligible_tiles: site already occupied");
  std::vector<TileId> out;
  for (const TileType& t : system.tiles) {
    if (attach_strength(system, assembly, site, t) >= system.temperature) out.push_back(t.id);
  }
  return out;
}

SimResult run(const TileSystem& system, const SimConfig& cfg) {
  require_valid(system);
  if (cfg.max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  const Site origin{0, 0};
  if (cfg.bounding_box && !cfg.bounding_box->contains(origin)) {
    throw std::invalid_argument("bounding box does not contain the seed site");
  }

  const auto start = std::chrono::steady_clock::now();
  const GlueIndex index(system);
  SimResult result(Assembly(origin, system.seed_id));
  Assembly& assembly = result.assembly;

  // Attachable sites ordered by (insertion sequence, site); the sequence is 0 under
  // lexicographic ordering.
  using QueueKey = std::pair<std::int64_t, Site>;
  std::set<QueueKey> queue;
  std::map<Site, std::pair<std::int64_t, std::vector<TileId>>> attachable;
  std::unordered_map<Site, std::int64_t, SiteHash> first_seen;
  std::int64_t next_seq = 0;

  auto refresh = [&](Site s) {
    if (assembly.occupied(s)) return;
    if (cfg.bounding_box && !cfg.bounding_box->contains(s)) return;
    auto [seen, fresh] = first_seen.try_emplace(s, next_seq);
    if (fresh) ++next_seq;
    const std::int64_t seq = cfg.site_order == SiteOrder::Insertion ? seen->second : 0;
    auto tiles = indexed_eligible(system, index, assembly, s);
    auto it = attachable.find(s);
    if (tiles.empty()) {
      if (it != attachable.end()) {
        queue.erase({it->second.first, s});
        attachable.erase(it);
      }
      return;
    }
    if (it == attachable.end()) {
      queue.insert({seq, s});
      attachable.emplace(s, std::make_pair(seq, std::move(tiles)));
    } else {
      it->second.second = std::move(tiles);
    }
  };

  for (Direction d : kDirections) refresh(neighbor(origin, d));

  for (;;) {
    if (cfg.bounding_box && static_cast<std::int64_t>(assembly.size()) == cfg.bounding_box->area()) {
      result.halted_reason = HaltReason::BoxFull;
      break;
    }
    if (queue.empty()) {
      result.halted_reason = HaltReason::Quiescent;
      break;
    }
    if (result.steps >= cfg.max_steps) {
      result.halted_reason = HaltReason::StepCap;
      break;
    }
    const Site site = queue.begin()->second;
    queue.erase(queue.begin());
    auto node = attachable.extract(site);
    std::vector<TileId>& tiles = node.mapped().second;
    if (tiles.size() > 1) {
      AmbiguousSite amb{site, tiles};
      result.nondeterministic_sites.push_back(amb);
      if (cfg.on_nondeterminism == NondeterminismPolicy::Fail) throw NondeterminismError(std::move(amb));
    }
    const TileId chosen = tiles.front();
    assembly.place(site, chosen);
    ++result.steps;
    result.events.push_back({result.steps, site, chosen});
    for (Direction d : kDirections) refresh(neighbor(site, d));
  }

  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

DirectednessReport check_directed(const TileSystem& system, const SimConfig& cfg) {
  SimConfig relaxed = cfg;
  relaxed.on_nondeterminism = NondeterminismPolicy::PickLowestTileId;
  SimResult r = run(system, relaxed);
  DirectednessReport report;
  report.offending = std::move(r.nondeterministic_sites);
  report.directed = report.offending.empty();
  return report;
}

void write_event_log(std::ostream& os, const std::vector<AttachEvent>& events) {
  for (const auto& e : events) {
    os << e.step << ' ' << e.site.row << ' ' << e.site.col << ' ' << e.tile << '\n';
  }
}

}  // namespace atam
