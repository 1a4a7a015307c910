#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atam/model.hpp"
#include "atam/sim.hpp"

namespace atam {

/// Row-major ARGB pixels, top row first.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<Argb> pixels;

  RasterImage() = default;
  RasterImage(int w, int h, Argb fill = 0);

  Argb at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  Argb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const RasterImage&) const = default;
};

/// Alpha byte applied to every loaded pixel.
inline constexpr std::uint32_t kOpaqueAlpha = 0xFEu;

constexpr Argb rgb_to_argb(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return argb_from_bits((kOpaqueAlpha << 24) | (std::uint32_t{r} << 16) | (std::uint32_t{g} << 8) | b);
}

enum class ImageErrorKind { MalformedHeader, Truncated, BadSample, Unsupported };

class ImageParseError : public std::runtime_error {
 public:
  ImageParseError(ImageErrorKind kind, std::size_t offset, const std::string& what);
  ImageErrorKind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  ImageErrorKind kind_;
  std::size_t offset_;
};

enum class ImageFormat { Auto, PpmAscii, PpmBinary };

/// Decodes a portable pixmap (P3 or P6). Throws ImageParseError with the byte offset of the fault.
RasterImage load_image(std::span<const std::uint8_t> bytes, ImageFormat hint = ImageFormat::Auto);
RasterImage load_image(std::string_view bytes, ImageFormat hint = ImageFormat::Auto);
RasterImage load_image_file(const std::string& path);

/// Header is `P6 <w> <h> 255\n` (or P3); alpha is dropped.
std::string write_ppm(const RasterImage& img, bool binary = true);

inline constexpr int kRapidSize = 32;

/// Nearest-neighbor resample: out(x, y) = in(floor((x + 0.5) W / w), floor((y + 0.5) H / h)).
RasterImage downscale_nearest(const RasterImage& img, int w = kRapidSize, int h = kRapidSize);

enum class CompileMode { Normal, Rapid };

const char* to_string(CompileMode m);

struct CompileOptions {
  CompileMode mode = CompileMode::Normal;
  int max_dimension = 256;  // normal mode only
};

class DimensionCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kPixelSeedGroup = "seed tile";
inline constexpr const char* kPixelBottomRowGroup = "bottom row";
inline constexpr const char* kPixelLeftColumnGroup = "left column";
inline constexpr const char* kPixelInteriorGroup = "pixel tiles";

/// One tile type per pixel. The bottom-left pixel is the seed; the bottom row and the left column
/// are chained by strength-2 glues and every other tile binds cooperatively to its south and west
/// neighbors with strength-1 glues at temperature 2.
///
/// Glue numbering, with grid x from the left and grid y from the bottom:
///   horizontal bond between (x-1, y) and (x, y), x in 1..W-1:   y * (W - 1) + x
///   vertical bond between (x, y-1) and (x, y), y in 1..H-1:     H * (W - 1) + (y - 1) * W + x + 1
/// Tiles are ordered seed, bottom row left to right, left column bottom to top, then the
/// interior row by row from the bottom.
///
/// Throws DimensionCapError if a normal-mode image exceeds max_dimension on either side.
TileSystem compile_image(const RasterImage& img, const CompileOptions& opts = {});

/// Paints each placed tile's color into the assembly's bounding box; empty sites get
/// `background`. Columns grow westward, so larger columns land further left.
RasterImage render(const Assembly& assembly, const TileSystem& system, Argb background = 0);

struct PixelMismatch {
  int x, y;
  Argb expected, actual;
};

struct RoundTripReport {
  bool pass = false;
  std::optional<PixelMismatch> first_mismatch;
  bool size_mismatch = false;
  std::size_t tile_count = 0;
  std::size_t glue_count = 0;
  std::int64_t steps = 0;
  double wall_time = 0.0;
  HaltReason halted_reason = HaltReason::Quiescent;
};

/// compile -> run -> render, compared against the image (or its 32x32 downscale in rapid mode).
RoundTripReport verify_roundtrip(const RasterImage& img, const CompileOptions& opts = {});

}  // namespace atam
