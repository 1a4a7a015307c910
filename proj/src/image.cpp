#include "atam/image.hpp"

#include <fstream>
#include <iterator>
#include <limits>

namespace atam {

RasterImage::RasterImage(int w, int h, Argb fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

ImageParseError::ImageParseError(ImageErrorKind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), kind_(kind), offset_(offset) {}

const char* to_string(CompileMode m) { return m == CompileMode::Rapid ? "rapid" : "normal"; }

namespace {

constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

class PnmReader {
 public:
  explicit PnmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  void skip_space_and_comments() {
    while (!at_end()) {
      const std::uint8_t c = bytes_[pos_];
      if (c == '#') {
        while (!at_end() && bytes_[pos_] != '\n') ++pos_;
      } else if (is_space(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Decimal field; `kind` is reported on a non-digit, Truncated on end of input.
  std::uint32_t number(ImageErrorKind kind, const char* what) {
    skip_space_and_comments();
    if (at_end()) throw ImageParseError(ImageErrorKind::Truncated, pos_, std::string("missing ") + what);
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (!at_end() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw ImageParseError(kind, start, std::string(what) + " out of range");
      }
      ++pos_;
    }
    if (pos_ == start) throw ImageParseError(kind, start, std::string("expected ") + what);
    if (!at_end() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw ImageParseError(kind, pos_, std::string("unexpected byte after ") + what);
    }
    return static_cast<std::uint32_t>(v);
  }

  std::uint8_t byte() { return bytes_[pos_++]; }
  std::size_t remaining() const { return at_end() ? 0 : bytes_.size() - pos_; }

  static bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t scale_sample(std::uint32_t v, std::uint32_t maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((std::uint64_t{v} * 255 + maxval / 2) / maxval);
}

}  // namespace

RasterImage load_image(std::span<const std::uint8_t> bytes, ImageFormat hint) {
  if (bytes.size() < 2) throw ImageParseError(ImageErrorKind::MalformedHeader, 0, "missing pixmap magic");
  if (bytes[0] != 'P') throw ImageParseError(ImageErrorKind::Unsupported, 0, "not a portable pixmap");
  bool binary;
  if (bytes[1] == '6') {
    binary = true;
  } else if (bytes[1] == '3') {
    binary = false;
  } else {
    throw ImageParseError(ImageErrorKind::Unsupported, 1, "only P3 and P6 pixmaps are supported");
  }
  if ((hint == ImageFormat::PpmAscii && binary) || (hint == ImageFormat::PpmBinary && !binary)) {
    throw ImageParseError(ImageErrorKind::Unsupported, 0, "pixmap variant does not match the format hint");
  }

  PnmReader in(bytes);
  in.byte();
  in.byte();
  if (!in.at_end() && !PnmReader::is_space(bytes[2]) && bytes[2] != '#') {
    throw ImageParseError(ImageErrorKind::MalformedHeader, 2, "expected whitespace after magic");
  }
  const std::size_t w_at = in.pos();
  const std::uint32_t w = in.number(ImageErrorKind::MalformedHeader, "width");
  const std::uint32_t h = in.number(ImageErrorKind::MalformedHeader, "height");
  const std::uint32_t maxval = in.number(ImageErrorKind::MalformedHeader, "maxval");
  if (w == 0 || h == 0 || std::uint64_t{w} * h > kMaxPixels) {
    throw ImageParseError(ImageErrorKind::MalformedHeader, w_at, "unsupported dimensions");
  }
  if (maxval == 0 || maxval > 65535) {
    throw ImageParseError(ImageErrorKind::MalformedHeader, in.pos(), "maxval must be in 1..65535");
  }

  RasterImage img(static_cast<int>(w), static_cast<int>(h));
  const std::size_t samples = std::size_t{w} * h * 3;
  std::vector<std::uint8_t> rgb(samples);

  if (binary) {
    if (in.at_end()) throw ImageParseError(ImageErrorKind::Truncated, in.pos(), "missing pixel data");
    in.byte();  // single whitespace byte before the raster
    const std::size_t width_bytes = maxval > 255 ? 2 : 1;
    if (in.remaining() < samples * width_bytes) {
      throw ImageParseError(ImageErrorKind::Truncated, bytes.size(),
                            "pixel data truncated: expected " + std::to_string(samples * width_bytes) +
                                " bytes, found " + std::to_string(in.remaining()));
    }
    for (std::size_t i = 0; i < samples; ++i) {
      std::uint32_t v = in.byte();
      if (width_bytes == 2) v = (v << 8) | in.byte();
      if (v > maxval) throw ImageParseError(ImageErrorKind::BadSample, in.pos() - width_bytes, "sample exceeds maxval");
      rgb[i] = scale_sample(v, maxval);
    }
  } else {
    for (std::size_t i = 0; i < samples; ++i) {
      in.skip_space_and_comments();
      const std::size_t at = in.pos();
      if (in.at_end()) {
        throw ImageParseError(ImageErrorKind::Truncated, at,
                              "pixel data truncated after " + std::to_string(i) + " samples");
      }
      const std::uint32_t v = in.number(ImageErrorKind::BadSample, "sample");
      if (v > maxval) throw ImageParseError(ImageErrorKind::BadSample, at, "sample exceeds maxval");
      rgb[i] = scale_sample(v, maxval);
    }
  }

  for (std::size_t p = 0; p < img.pixels.size(); ++p) {
    img.pixels[p] = rgb_to_argb(rgb[3 * p], rgb[3 * p + 1], rgb[3 * p + 2]);
  }
  return img;
}

RasterImage load_image(std::string_view bytes, ImageFormat hint) {
  return load_image(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()), hint);
}

RasterImage load_image_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return load_image(data);
}

std::string write_ppm(const RasterImage& img, bool binary) {
  std::string out = std::string(binary ? "P6" : "P3") + ' ' + std::to_string(img.width) + ' ' +
                    std::to_string(img.height) + " 255\n";
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const std::uint32_t c = argb_bits(img.at(x, y));
      const std::uint8_t rgb[3] = {static_cast<std::uint8_t>(c >> 16), static_cast<std::uint8_t>(c >> 8),
                                   static_cast<std::uint8_t>(c)};
      if (binary) {
        out.append(reinterpret_cast<const char*>(rgb), 3);
      } else {
        for (int i = 0; i < 3; ++i) {
          if (x != 0 || i != 0) out += ' ';
          out += std::to_string(rgb[i]);
        }
      }
    }
    if (!binary) out += '\n';
  }
  return out;
}

RasterImage downscale_nearest(const RasterImage& img, int w, int h) {
  RasterImage out(w, h);
  for (int y = 0; y < h; ++y) {
    // floor((y + 0.5) * H / h) computed exactly in integers
    const auto sy = static_cast<int>((std::int64_t{2} * y + 1) * img.height / (std::int64_t{2} * h));
    for (int x = 0; x < w; ++x) {
      const auto sx = static_cast<int>((std::int64_t{2} * x + 1) * img.width / (std::int64_t{2} * w));
      out.at(x, y) = img.at(sx, sy);
    }
  }
  return out;
}

TileSystem compile_image(const RasterImage& img, const CompileOptions& opts) {
  if (img.width < 1 || img.height < 1) throw std::invalid_argument("image is empty");
  if (opts.mode == CompileMode::Rapid) {
    CompileOptions normal = opts;
    normal.mode = CompileMode::Normal;
    normal.max_dimension = kRapidSize;
    return compile_image(downscale_nearest(img), normal);
  }
  if (img.width > opts.max_dimension || img.height > opts.max_dimension) {
    throw DimensionCapError("image is " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                            ", above the " + std::to_string(opts.max_dimension) + "x" +
                            std::to_string(opts.max_dimension) +
                            " normal-mode cap; raise it with --max-dim or use rapid mode");
  }

  const std::uint32_t W = static_cast<std::uint32_t>(img.width);
  const std::uint32_t H = static_cast<std::uint32_t>(img.height);
  auto horizontal = [&](std::uint32_t x, std::uint32_t y) { return GlueLabel{y * (W - 1) + x}; };
  auto vertical = [&](std::uint32_t x, std::uint32_t y) { return GlueLabel{H * (W - 1) + (y - 1) * W + x + 1}; };

  const std::uint32_t glue_count = 2 * W * H - W - H;
  std::vector<int> strengths(glue_count, 1);
  for (std::uint32_t x = 1; x < W; ++x) strengths[horizontal(x, 0).value - 1] = 2;
  for (std::uint32_t y = 1; y < H; ++y) strengths[vertical(0, y).value - 1] = 2;

  TileSystem sys;
  sys.strengths = GlueStrengthTable(std::move(strengths));
  sys.temperature = 2;
  sys.seed_id = 1;
  sys.tiles.reserve(std::size_t{W} * H);

  auto add = [&](std::uint32_t x, std::uint32_t y, const char* group) {
    TileType t;
    t.id = static_cast<TileId>(sys.tiles.size() + 1);
    t.label = group;
    t.edges[static_cast<int>(Direction::North)] = y + 1 < H ? vertical(x, y + 1) : GlueLabel{};
    t.edges[static_cast<int>(Direction::East)] = x + 1 < W ? horizontal(x + 1, y) : GlueLabel{};
    t.edges[static_cast<int>(Direction::South)] = y > 0 ? vertical(x, y) : GlueLabel{};
    t.edges[static_cast<int>(Direction::West)] = x > 0 ? horizontal(x, y) : GlueLabel{};
    t.color = img.at(static_cast<int>(x), static_cast<int>(H - 1 - y));
    sys.tiles.push_back(std::move(t));
  };

  add(0, 0, kPixelSeedGroup);
  for (std::uint32_t x = 1; x < W; ++x) add(x, 0, kPixelBottomRowGroup);
  for (std::uint32_t y = 1; y < H; ++y) add(0, y, kPixelLeftColumnGroup);
  for (std::uint32_t y = 1; y < H; ++y) {
    for (std::uint32_t x = 1; x < W; ++x) add(x, y, kPixelInteriorGroup);
  }
  return sys;
}

RasterImage render(const Assembly& assembly, const TileSystem& system, Argb background) {
  const auto b = assembly.bounds();
  RasterImage img(b.max_col - b.min_col + 1, b.max_row - b.min_row + 1, background);
  for (const auto& [site, id] : assembly.placed()) {
    img.at(b.max_col - site.col, b.max_row - site.row) = system.tile(id).color;
  }
  return img;
}

RoundTripReport verify_roundtrip(const RasterImage& img, const CompileOptions& opts) {
  const RasterImage expected = opts.mode == CompileMode::Rapid ? downscale_nearest(img) : img;
  const TileSystem sys = compile_image(img, opts);

  RoundTripReport report;
  report.tile_count = sys.tiles.size();
  report.glue_count = sys.strengths.size();

  const SimResult sim = run(sys);
  report.steps = sim.steps;
  report.wall_time = sim.wall_time;
  report.halted_reason = sim.halted_reason;

  const RasterImage actual = render(sim.assembly, sys);
  if (actual.width != expected.width || actual.height != expected.height) {
    report.size_mismatch = true;
    return report;
  }
  for (int y = 0; y < expected.height && !report.first_mismatch; ++y) {
    for (int x = 0; x < expected.width; ++x) {
      if (actual.at(x, y) != expected.at(x, y)) {
        report.first_mismatch = PixelMismatch{x, y, expected.at(x, y), actual.at(x, y)};
        break;
      }
    }
  }
  report.pass = !report.first_mismatch;
  return report;
}

}  // namespace atam
