#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atam/model.hpp"

namespace atam {

/// A parse failure at a 1-based line and column.
class TileParseError : public std::runtime_error {
 public:
  TileParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_, column_;
  std::string message_;
};

struct TileFileHeader {
  std::size_t num_tile_types = 0;
  std::size_t num_binding_types = 0;
  std::vector<int> binding_strengths;
  TileId seed = 1;
  int temperature = 2;
  std::optional<double> gse;
  std::optional<double> gmc;
};

struct TileRecord {
  std::array<std::uint32_t, 4> glues{};  // N E S W
  Argb color = 0;
  std::string group;  // text of the most recent % comment
  std::size_t line = 0;
};

struct TileComment {
  std::size_t line = 0;
  std::string text;
};

struct TileFileDoc {
  TileFileHeader header;
  std::vector<TileRecord> body;
  std::vector<TileComment> comments;
  std::vector<std::string> warnings;  // one per defaulted header field
};

struct ParsedTileFile {
  TileSystem system;
  TileFileDoc doc;
};

/// Canonical text:
///   num tile types=<T>
///   num binding types=<G>
///   binding strengths={s1 ... sG}
///   seed=<id>
///   temperature=<t>
///   [Gse=<v>]
///   [Gmc=<v>]
/// then the tiles in id order as `{n e s w}(color)`, each run of tiles sharing a label preceded
/// by `%<label>`. Throws ValidationError for invalid systems.
std::string emit(const TileSystem& system);

/// Accepts the canonical form plus free whitespace, `%` comments anywhere and a partial or
/// missing header; every defaulted field adds a warning. Throws TileParseError.
ParsedTileFile parse(std::string_view text);

/// emit(parse(text).system)
std::string canonicalize(std::string_view text);

}  // namespace atam
