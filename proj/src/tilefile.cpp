#include "atam/tilefile.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace atam {

TileParseError::TileParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string comment_text(std::string_view label) {
  std::string out(trim(label));
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

struct Pos {
  std::size_t line = 1, column = 1;
};

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool eof() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  Pos pos() const { return pos_; }

  char get() {
    const char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_inline_space() {
    while (!eof() && peek() != '\n' && is_space(peek())) get();
  }

  std::string_view rest_of_line() {
    const std::size_t start = i_;
    while (!eof() && peek() != '\n') get();
    return text_.substr(start, i_ - start);
  }

  // Characters up to whitespace or one of the record delimiters.
  std::string_view token() {
    const std::size_t start = i_;
    while (!eof() && !is_space(peek()) && std::string_view("{}()%").find(peek()) == std::string_view::npos) get();
    return text_.substr(start, i_ - start);
  }

 private:
  std::string_view text_;
  std::size_t i_ = 0;
  Pos pos_;
};

[[noreturn]] void fail(Pos p, const std::string& msg) { throw TileParseError(p.line, p.column, msg); }

std::string shown(std::string_view tok) {
  std::string out;
  for (char c : tok.substr(0, 32)) {
    out += std::isprint(static_cast<unsigned char>(c)) ? c : '?';
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view tok, Int& out) {
  if (tok.empty()) return false;
  const char* b = tok.data();
  if (*b == '+') ++b;
  auto [p, ec] = std::from_chars(b, tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

constexpr std::size_t kMaxBindingTypes = std::size_t{1} << 24;

struct HeaderField {
  Pos key_pos;
  Pos value_pos;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : in_(text) {}

  ParsedTileFile run() {
    for (;;) {
      skip_space(true);
      if (in_.eof()) break;
      const char c = in_.peek();
      if (c == '{') {
        record();
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        header_line();
      } else {
        fail(in_.pos(), "unexpected character '" + shown(std::string_view(&c, 1)) + "'");
      }
    }
    return finish();
  }

 private:
  // Skips whitespace and % comments. Comments seen at top level start a new tile group.
  void skip_space(bool top_level) {
    while (!in_.eof()) {
      if (is_space(in_.peek())) {
        in_.get();
      } else if (in_.peek() == '%') {
        const Pos p = in_.pos();
        in_.get();
        std::string text(trim(in_.rest_of_line()));
        doc_.comments.push_back({p.line, text});
        if (top_level) group_ = std::move(text);
      } else {
        break;
      }
    }
  }

  void record() {
    const Pos start = in_.pos();
    in_.get();  // {
    TileRecord rec;
    rec.group = group_;
    rec.line = start.line;
    std::array<Pos, 4> glue_pos{};
    std::size_t count = 0;
    for (;;) {
      skip_space(false);
      if (in_.eof()) fail(start, "unterminated tile record");
      if (in_.peek() == '}') {
        in_.get();
        break;
      }
      const Pos p = in_.pos();
      const std::string_view tok = in_.token();
      if (tok.empty()) fail(p, std::string("unexpected '") + in_.peek() + "' in tile record");
      if (count == 4) fail(start, "expected 4 glues, found more");
      std::int64_t v = 0;
      if (!parse_int(tok, v)) fail(p, "non-integer glue '" + shown(tok) + "'");
      if (v < 0) fail(p, "negative glue " + std::string(tok));
      if (v > std::numeric_limits<std::uint32_t>::max()) fail(p, "glue " + std::string(tok) + " out of range");
      glue_pos[count] = p;
      rec.glues[count++] = static_cast<std::uint32_t>(v);
    }
    if (count != 4) fail(start, "expected 4 glues, found " + std::to_string(count));

    skip_space(false);
    if (in_.eof() || in_.peek() != '(') fail(in_.pos(), "expected '(' and a color after tile record");
    in_.get();
    skip_space(false);
    const Pos cp = in_.pos();
    const std::string_view tok = in_.token();
    std::int64_t color = 0;
    if (!parse_int(tok, color)) fail(cp, "non-integer color '" + shown(tok) + "'");
    if (color < std::numeric_limits<std::int32_t>::min() || color > std::numeric_limits<std::uint32_t>::max()) {
      fail(cp, "color " + std::string(tok) + " out of 32-bit range");
    }
    rec.color = argb_from_bits(static_cast<std::uint32_t>(color));
    skip_space(false);
    if (in_.eof() || in_.peek() != ')') fail(in_.pos(), "expected ')' after color");
    in_.get();

    doc_.body.push_back(std::move(rec));
    glue_positions_.push_back(glue_pos);
  }

  void header_line() {
    const Pos key_pos = in_.pos();
    std::string key;
    bool space_pending = false;
    while (!in_.eof() && in_.peek() != '=' && in_.peek() != '\n') {
      const char c = in_.get();
      if (is_space(c)) {
        space_pending = !key.empty();
      } else {
        if (space_pending) key += ' ';
        space_pending = false;
        key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
    }
    if (in_.eof() || in_.peek() != '=') fail(key_pos, "expected '=' after header key '" + shown(key) + "'");
    in_.get();
    in_.skip_inline_space();
    const Pos value_pos = in_.pos();
    const std::string_view value = trim(in_.rest_of_line());

    static const std::set<std::string, std::less<>> known = {
        "num tile types", "num binding types", "binding strengths", "seed", "temperature", "gse", "gmc"};
    if (!known.contains(key)) fail(key_pos, "unknown header key '" + shown(key) + "'");
    if (!fields_.emplace(key, HeaderField{key_pos, value_pos}).second) {
      fail(key_pos, "duplicate header key '" + key + "'");
    }

    TileFileHeader& h = doc_.header;
    auto count_value = [&](const char* what) {
      std::size_t v = 0;
      if (!parse_int(value, v)) fail(value_pos, std::string("expected a non-negative integer for ") + what);
      return v;
    };
    if (key == "num tile types") {
      h.num_tile_types = count_value("num tile types");
    } else if (key == "num binding types") {
      h.num_binding_types = count_value("num binding types");
      if (h.num_binding_types > kMaxBindingTypes) fail(value_pos, "too many binding types");
    } else if (key == "binding strengths") {
      h.binding_strengths = strengths_value(value, value_pos);
    } else if (key == "seed") {
      std::size_t v = 0;
      if (!parse_int(value, v) || v == 0 || v > std::numeric_limits<TileId>::max()) {
        fail(value_pos, "seed must be a positive tile index");
      }
      h.seed = static_cast<TileId>(v);
    } else if (key == "temperature") {
      int v = 0;
      if (!parse_int(value, v) || v < 1) fail(value_pos, "temperature must be an integer of at least 1");
      h.temperature = v;
    } else {
      double v = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || p != value.data() + value.size() || !std::isfinite(v)) {
        fail(value_pos, "expected a number for " + key);
      }
      (key == "gse" ? h.gse : h.gmc) = v;
    }
  }

  std::vector<int> strengths_value(std::string_view value, Pos value_pos) {
    if (value.size() < 2 || value.front() != '{' || value.back() != '}') {
      fail(value_pos, "binding strengths must be written {s1 s2 ...}");
    }
    std::vector<int> out;
    std::string_view inner = value.substr(1, value.size() - 2);
    std::size_t i = 0;
    while (i < inner.size()) {
      if (is_space(inner[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < inner.size() && !is_space(inner[j])) ++j;
      int v = 0;
      if (!parse_int(inner.substr(i, j - i), v) || v < 0) {
        Pos p = value_pos;
        p.column += 1 + i;
        fail(p, "binding strength '" + shown(inner.substr(i, j - i)) + "' is not a non-negative integer");
      }
      out.push_back(v);
      i = j;
    }
    return out;
  }

  ParsedTileFile finish() {
    TileFileHeader& h = doc_.header;
    const auto has = [&](const char* k) { return fields_.contains(k); };
    if (doc_.body.empty()) fail(in_.pos(), "no tile records");

    if (has("num tile types")) {
      if (h.num_tile_types != doc_.body.size()) {
        fail(fields_.at("num tile types").value_pos, "header declares " + std::to_string(h.num_tile_types) +
                                                         " tile types but the file lists " +
                                                         std::to_string(doc_.body.size()));
      }
    } else {
      h.num_tile_types = doc_.body.size();
      warn("num tile types missing; counted " + std::to_string(h.num_tile_types) + " records");
    }

    if (has("num binding types")) {
      if (has("binding strengths") && h.binding_strengths.size() != h.num_binding_types) {
        fail(fields_.at("binding strengths").value_pos,
             "expected " + std::to_string(h.num_binding_types) + " binding strengths, found " +
                 std::to_string(h.binding_strengths.size()));
      }
      for (std::size_t r = 0; r < doc_.body.size(); ++r) {
        for (std::size_t k = 0; k < 4; ++k) {
          if (doc_.body[r].glues[k] > h.num_binding_types) {
            fail(glue_positions_[r][k], "glue " + std::to_string(doc_.body[r].glues[k]) +
                                            " exceeds num binding types " + std::to_string(h.num_binding_types));
          }
        }
      }
    } else if (has("binding strengths")) {
      h.num_binding_types = h.binding_strengths.size();
      warn("num binding types missing; taken from binding strengths");
      for (std::size_t r = 0; r < doc_.body.size(); ++r) {
        for (std::size_t k = 0; k < 4; ++k) {
          if (doc_.body[r].glues[k] > h.num_binding_types) {
            fail(glue_positions_[r][k], "glue " + std::to_string(doc_.body[r].glues[k]) +
                                            " has no binding strength");
          }
        }
      }
    } else {
      std::uint32_t max_glue = 0;
      for (const auto& rec : doc_.body) max_glue = std::max(max_glue, *std::max_element(rec.glues.begin(), rec.glues.end()));
      h.num_binding_types = max_glue;
      warn("num binding types missing; inferred " + std::to_string(max_glue) + " from the largest glue");
    }
    if (!has("binding strengths")) {
      // Lower half of the glue alphabet binds weakly, the upper half strongly.
      h.binding_strengths.assign(h.num_binding_types, 1);
      for (std::size_t g = h.num_binding_types / 2 + 1; g <= h.num_binding_types; ++g) h.binding_strengths[g - 1] = 2;
      warn("binding strengths missing; glues 1.." + std::to_string(h.num_binding_types / 2) +
           " default to strength 1 and the rest to 2");
    }
    if (has("seed")) {
      if (h.seed > doc_.body.size()) {
        fail(fields_.at("seed").value_pos, "seed " + std::to_string(h.seed) + " is not a tile index (1.." +
                                               std::to_string(doc_.body.size()) + ")");
      }
    } else {
      h.seed = 1;
      warn("seed missing; using the first tile");
    }
    if (!has("temperature")) {
      h.temperature = 2;
      warn("temperature missing; using 2");
    }

    ParsedTileFile out;
    TileSystem& sys = out.system;
    sys.tiles.reserve(doc_.body.size());
    for (const auto& rec : doc_.body) {
      TileType t;
      t.id = static_cast<TileId>(sys.tiles.size() + 1);
      t.label = rec.group;
      for (std::size_t k = 0; k < 4; ++k) t.edges[k] = GlueLabel{rec.glues[k]};
      t.color = rec.color;
      sys.tiles.push_back(std::move(t));
    }
    sys.strengths = GlueStrengthTable(h.binding_strengths);
    sys.seed_id = h.seed;
    sys.temperature = h.temperature;
    sys.gse = h.gse;
    sys.gmc = h.gmc;
    out.doc = std::move(doc_);
    return out;
  }

  void warn(std::string w) { doc_.warnings.push_back(std::move(w)); }

  Cursor in_;
  TileFileDoc doc_;
  std::string group_;
  std::map<std::string, HeaderField, std::less<>> fields_;
  std::vector<std::array<Pos, 4>> glue_positions_;
};

}  // namespace

std::string emit(const TileSystem& system) {
  require_valid(system);
  std::string out;
  out += "num tile types=" + std::to_string(system.tiles.size()) + '\n';
  out += "num binding types=" + std::to_string(system.strengths.size()) + '\n';
  out += "binding strengths={";
  const auto& s = system.strengths.values();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != 0) out += ' ';
    out += std::to_string(s[i]);
  }
  out += "}\n";
  out += "seed=" + std::to_string(system.seed_id) + '\n';
  out += "temperature=" + std::to_string(system.temperature) + '\n';
  if (system.gse) out += "Gse=" + format_double(*system.gse) + '\n';
  if (system.gmc) out += "Gmc=" + format_double(*system.gmc) + '\n';

  std::string group;
  for (const TileType& t : system.tiles) {
    std::string label = comment_text(t.label);
    if (label != group) {
      out += '%' + label + '\n';
      group = std::move(label);
    }
    out += '{';
    for (std::size_t k = 0; k < 4; ++k) {
      if (k != 0) out += ' ';
      out += std::to_string(t.edges[k].value);
    }
    out += "}(" + std::to_string(t.color) + ")\n";
  }
  return out;
}

ParsedTileFile parse(std::string_view text) { return Parser(text).run(); }

std::string canonicalize(std::string_view text) { return emit(parse(text).system); }

}  // namespace atam
