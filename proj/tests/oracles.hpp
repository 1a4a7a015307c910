#pragma once

// Reference implementations used only by tests. They share no code paths with the library's
// simulator or generators beyond the plain data types.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "atam/model.hpp"

namespace oracle {

// ((x - 1) mod n) + 1 by repeated normalization.
inline std::int64_t wrap1_slow(std::int64_t x, std::int64_t n) {
  while (x < 1) x += n;
  while (x > n) x -= n;
  return x;
}

inline std::int64_t twos_complement(std::uint32_t bits) {
  return bits >= 0x80000000u ? static_cast<std::int64_t>(bits) - 0x100000000LL : static_cast<std::int64_t>(bits);
}

struct BruteAssembly {
  std::map<std::pair<int, int>, atam::TileId> placed;  // (row, col)
  std::size_t ambiguous_sites = 0;
};

// Tries every tile at every empty neighbor of the assembly, placing the lowest fitting id, until
// nothing fits or `limit` tiles are placed. North is row + 1, west is col + 1.
inline BruteAssembly brute_force_assemble(const atam::TileSystem& sys, std::size_t limit = 1 << 20) {
  BruteAssembly a;
  a.placed[{0, 0}] = sys.seed_id;
  const int dr[4] = {1, 0, -1, 0};
  const int dc[4] = {0, -1, 0, 1};
  auto strength = [&](std::uint32_t g) {
    if (g == 0 || g > sys.strengths.values().size()) return 0;
    return sys.strengths.values()[g - 1];
  };
  bool changed = true;
  while (changed && a.placed.size() < limit) {
    changed = false;
    std::vector<std::pair<int, int>> empties;
    for (const auto& [rc, _] : a.placed) {
      for (int d = 0; d < 4; ++d) {
        std::pair<int, int> n{rc.first + dr[d], rc.second + dc[d]};
        if (!a.placed.count(n)) empties.push_back(n);
      }
    }
    for (const auto& site : empties) {
      if (a.placed.count(site)) continue;
      std::vector<atam::TileId> fits;
      for (const auto& t : sys.tiles) {
        int total = 0;
        for (int d = 0; d < 4; ++d) {
          auto it = a.placed.find({site.first + dr[d], site.second + dc[d]});
          if (it == a.placed.end()) continue;
          const std::uint32_t mine = t.edges[d].value;
          const std::uint32_t theirs = sys.tile(it->second).edges[(d + 2) % 4].value;
          if (mine != 0 && mine == theirs) total += strength(mine);
        }
        if (total >= sys.temperature) fits.push_back(t.id);
      }
      if (fits.empty()) continue;
      if (fits.size() > 1) ++a.ambiguous_sites;
      a.placed[site] = fits.front();
      changed = true;
    }
  }
  return a;
}

}  // namespace oracle
