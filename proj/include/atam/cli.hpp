#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atam/image.hpp"

namespace atam::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kUsage = 2, kStepCap = 3, kNondeterministic = 4 };

struct StatsRow {
  int width = 0;
  int height = 0;
  std::size_t tile_types = 0;
  std::size_t tile_file_bytes = 0;
  std::int64_t sim_steps = 0;
  double wall_time = 0.0;
  std::optional<std::string> error;
};

inline constexpr const char* kStatsHeader = "width,height,tile_types,tile_file_bytes,sim_steps,wall_time_s";

/// Uniformly random opaque colors from a seeded generator.
RasterImage random_image(int width, int height, std::uint64_t seed);

/// Compiles, emits and simulates one image.
StatsRow measure(const RasterImage& img, const CompileOptions& opts);

/// One row per size, each measured on random_image(size, size, seed + size).
std::vector<StatsRow> stats_for_sizes(const std::vector<int>& sizes, std::uint64_t seed, const CompileOptions& opts);

/// Header line plus one line per row. Failed rows leave the numeric fields empty and append
/// the error message as a seventh field.
void write_stats_csv(std::ostream& os, const std::vector<StatsRow>& rows);

/// Splits "1,2,-3" into integers. Throws std::invalid_argument on anything else.
std::vector<std::int64_t> parse_int_list(const std::string& text);

/// Runs one command line (args[0] is the program name) and returns the exit status.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atam::cli
