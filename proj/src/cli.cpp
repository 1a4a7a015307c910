#include "atam/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "atam/generators.hpp"
#include "atam/sim.hpp"
#include "atam/tilefile.hpp"

namespace atam::cli {

RasterImage random_image(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> rgb(0, 0xFFFFFF);
  RasterImage img(width, height);
  for (Argb& p : img.pixels) p = argb_from_bits((kOpaqueAlpha << 24) | rgb(rng));
  return img;
}

StatsRow measure(const RasterImage& img, const CompileOptions& opts) {
  StatsRow row;
  row.width = img.width;
  row.height = img.height;
  try {
    const TileSystem sys = compile_image(img, opts);
    row.tile_types = sys.tiles.size();
    row.tile_file_bytes = emit(sys).size();
    const SimResult sim = run(sys);
    row.sim_steps = sim.steps;
    row.wall_time = sim.wall_time;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<StatsRow> stats_for_sizes(const std::vector<int>& sizes, std::uint64_t seed, const CompileOptions& opts) {
  std::vector<StatsRow> rows;
  for (int size : sizes) {
    if (size < 1) {
      StatsRow bad;
      bad.width = bad.height = size;
      bad.error = "size must be positive";
      rows.push_back(bad);
      continue;
    }
    rows.push_back(measure(random_image(size, size, seed + static_cast<std::uint64_t>(size)), opts));
  }
  return rows;
}

void write_stats_csv(std::ostream& os, const std::vector<StatsRow>& rows) {
  os << kStatsHeader << '\n';
  for (const auto& r : rows) {
    os << r.width << ',' << r.height << ',';
    if (r.error) {
      std::string msg = *r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      os << ",,," << ',' << msg << '\n';
      continue;
    }
    os << r.tile_types << ',' << r.tile_file_bytes << ',' << r.sim_steps << ',' << std::fixed
       << std::setprecision(6) << r.wall_time << std::defaultfloat << '\n';
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("'" + item + "' is not an integer");
    }
    if (used != item.size()) throw std::invalid_argument("'" + item + "' is not an integer");
    out.push_back(v);
  }
  if (!text.empty() && text.back() == ',') throw std::invalid_argument("trailing ',' in '" + text + "'");
  return out;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot read " + path);
  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot write " + path);
  f << data;
  f.flush();
  if (!f) throw std::ios_base::failure("write to " + path + " failed");
}

std::vector<std::int64_t> shifts_for(int n, const std::string& text) {
  auto shifts = parse_int_list(text);
  if (shifts.size() != static_cast<std::size_t>(n - 1)) {
    throw UsageError("expected N-1 = " + std::to_string(n - 1) + " shifts, got " + std::to_string(shifts.size()));
  }
  return shifts;
}

void check_n(int n) {
  if (n < 2) throw UsageError("-N must be at least 2");
}

// Writes the tile file to `path`, or to `out` when no path is given.
void deliver(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

struct PatternCheck {
  std::size_t mismatches = 0;
  std::string first;
};

// Runs a generated system and compares every site of the N x N square with `expected`.
PatternCheck check_pattern(const GeneratedSystem& gen, const std::function<std::int64_t(int, int)>& expected,
                           std::int64_t& steps) {
  const int n = gen.layout.n;
  const SimResult sim = run(gen.system);
  steps = sim.steps;
  PatternCheck check;
  auto note = [&](const std::string& what) {
    if (check.mismatches++ == 0) check.first = what;
  };
  if (sim.assembly.size() != static_cast<std::size_t>(n) * n) {
    note("assembly has " + std::to_string(sim.assembly.size()) + " tiles, expected " + std::to_string(n * n));
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      auto id = sim.assembly.at({r, c});
      const std::int64_t want = expected(r, c);
      if (!id) {
        note("(" + std::to_string(r) + "," + std::to_string(c) + ") empty, expected " + std::to_string(want));
      } else if (gen.layout.info(*id).label != want) {
        note("(" + std::to_string(r) + "," + std::to_string(c) + ") has " +
             std::to_string(gen.layout.info(*id).label) + ", expected " + std::to_string(want));
      }
    }
  }
  return check;
}

int report_pattern(const GeneratedSystem& gen, const ShiftSpec& spec,
                   const std::function<std::int64_t(int, int)>& expected, std::ostream& out) {
  std::int64_t steps = 0;
  const PatternCheck check = check_pattern(gen, expected, steps);
  const auto want_tiles = expected_tile_count(spec);
  const bool count_ok = static_cast<std::int64_t>(gen.system.tiles.size()) == want_tiles;
  out << "tiles: " << gen.system.tiles.size() << " (expected " << want_tiles << ")\n";
  out << "steps: " << steps << '\n';
  out << "mismatches: " << check.mismatches << '\n';
  if (check.mismatches != 0) out << "first mismatch: " << check.first << '\n';
  const bool pass = count_ok && check.mismatches == 0;
  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kOk : kIoError;
}

CompileMode parse_mode(const std::string& m) {
  if (m == "normal") return CompileMode::Normal;
  if (m == "rapid") return CompileMode::Rapid;
  throw UsageError("--mode must be normal or rapid");
}

BoundingBox parse_box(const std::string& text) {
  auto v = parse_int_list(text);
  if (v.size() != 4) throw UsageError("--box expects min_row,max_row,min_col,max_col");
  BoundingBox box{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), static_cast<int>(v[3])};
  if (box.min_row > box.max_row || box.min_col > box.max_col) throw UsageError("--box has empty extent");
  return box;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate, simulate and verify abstract tile assembly systems"};
  app.require_subcommand(1);

  int n = 0;
  std::int64_t shift = 0;
  std::string shifts_text;
  std::int64_t rotate_k = 0;
  std::string out_path;

  auto* gen_u = app.add_subcommand("gen-uniform", "Tile system for a uniformly shifted N x N pattern");
  gen_u->add_option("-N", n, "Base row length")->required();
  gen_u->add_option("-S", shift, "Shift applied to every row")->required();
  gen_u->add_option("-o,--output", out_path, "Tile file to write (default: stdout)");

  auto* gen_nu = app.add_subcommand("gen-nonuniform", "Tile system with one shift per row");
  gen_nu->add_option("-N", n, "Base row length")->required();
  gen_nu->add_option("-S", shifts_text, "N-1 comma-separated row shifts")->required();
  gen_nu->add_option("-o,--output", out_path, "Tile file to write (default: stdout)");

  auto* gen_t = app.add_subcommand("gen-transform", "Non-uniform tile system with a rotated base row");
  gen_t->add_option("-N", n, "Base row length")->required();
  gen_t->add_option("-S", shifts_text, "N-1 comma-separated row shifts")->required();
  gen_t->add_option("-k", rotate_k, "Base row rotation")->required();
  gen_t->add_option("-o,--output", out_path, "Tile file to write (default: stdout)");

  std::string image_path, mode_text = "normal";
  int max_dim = 256;
  auto* compile = app.add_subcommand("compile", "Compile a pixmap into a pixel-per-tile system");
  compile->add_option("image", image_path, "P3/P6 pixmap")->required();
  compile->add_option("--mode", mode_text, "normal or rapid (32x32)");
  compile->add_option("--max-dim", max_dim, "Largest width or height accepted in normal mode");
  compile->add_option("-o,--output", out_path, "Tile file to write (default: stdout)");

  std::string tile_path, box_text, event_log, nondet = "fail", order = "lex";
  std::int64_t max_steps = SimConfig{}.max_steps;
  bool ascii = false;
  auto* run_cmd = app.add_subcommand("run", "Simulate a tile file");
  run_cmd->add_option("tilefile", tile_path, "Tile file")->required();
  run_cmd->add_option("--max-steps", max_steps, "Attachment cap");
  run_cmd->add_option("--box", box_text, "min_row,max_row,min_col,max_col");
  run_cmd->add_option("-o,--output", out_path, "Rendered pixmap to write");
  run_cmd->add_flag("--ascii", ascii, "Write P3 instead of P6");
  run_cmd->add_option("--event-log", event_log, "Write one 'step row col tile' line per attachment");
  run_cmd->add_option("--on-nondet", nondet, "fail or pick-lowest");
  run_cmd->add_option("--order", order, "lex or insertion");

  auto* verify = app.add_subcommand("verify", "Check a generated system or an image round trip");
  verify->require_subcommand(1);
  auto* v_u = verify->add_subcommand("uniform", "Compare a uniform assembly with its closed form");
  v_u->add_option("-N", n)->required();
  v_u->add_option("-S", shift)->required();
  auto* v_nu = verify->add_subcommand("nonuniform", "Compare a non-uniform assembly with its closed form");
  v_nu->add_option("-N", n)->required();
  v_nu->add_option("-S", shifts_text)->required();
  auto* v_t = verify->add_subcommand("transform", "Compare a rotated non-uniform assembly with its closed form");
  v_t->add_option("-N", n)->required();
  v_t->add_option("-S", shifts_text)->required();
  v_t->add_option("-k", rotate_k)->required();
  auto* v_img = verify->add_subcommand("image", "Compile, simulate and render a pixmap");
  v_img->add_option("image", image_path)->required();
  v_img->add_option("--mode", mode_text);
  v_img->add_option("--max-dim", max_dim);

  std::string sizes_text = "4,8,16,32,64", dir;
  std::uint64_t seed = 1;
  auto* stats = app.add_subcommand("stats", "CSV of tile count, file size and simulation time per image size");
  stats->add_option("--sizes", sizes_text, "Comma-separated square image sizes")->capture_default_str();
  stats->add_option("--seed", seed, "Seed for the random images");
  stats->add_option("--dir", dir, "Measure every .ppm in this directory instead");
  stats->add_option("--mode", mode_text, "normal or rapid");
  stats->add_option("--max-dim", max_dim, "Normal-mode size cap");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen_u->parsed()) {
      check_n(n);
      const auto gen = gen_uniform(n, shift);
      deliver(emit(gen.system), out_path, out);
      (out_path.empty() ? err : out) << "tiles: " << gen.system.tiles.size() << '\n';
      return kOk;
    }
    if (gen_nu->parsed() || gen_t->parsed()) {
      check_n(n);
      const auto shifts = shifts_for(n, shifts_text);
      const auto gen = gen_nu->parsed() ? gen_nonuniform(n, shifts) : gen_transform(n, shifts, rotate_k);
      deliver(emit(gen.system), out_path, out);
      const auto d = static_cast<std::int64_t>(distinct_shifts(n, shifts).size());
      std::ostream& info = out_path.empty() ? err : out;
      info << "tiles: " << gen.system.tiles.size() << '\n';
      info << "distinct shifts: " << d << '\n';
      info << "published count 2(N-1)+N*d: " << published_nonuniform_count(n, d) << " (seed not included)\n";
      return kOk;
    }
    if (compile->parsed()) {
      CompileOptions opts{parse_mode(mode_text), max_dim};
      const RasterImage img = load_image_file(image_path);
      const TileSystem sys = compile_image(img, opts);
      const std::string text = emit(sys);
      deliver(text, out_path, out);
      const int w = opts.mode == CompileMode::Rapid ? kRapidSize : img.width;
      const int h = opts.mode == CompileMode::Rapid ? kRapidSize : img.height;
      std::ostream& info = out_path.empty() ? err : out;
      info << "width: " << w << "\nheight: " << h << "\ntile_types: " << sys.tiles.size()
           << "\nglues: " << sys.strengths.size() << "\ntile_file_bytes: " << text.size()
           << "\nsim_steps: " << static_cast<std::int64_t>(sys.tiles.size()) - 1 << '\n';
      return kOk;
    }
    if (run_cmd->parsed()) {
      SimConfig cfg;
      if (max_steps < 1) throw UsageError("--max-steps must be at least 1");
      cfg.max_steps = max_steps;
      if (!box_text.empty()) cfg.bounding_box = parse_box(box_text);
      if (nondet == "fail") {
        cfg.on_nondeterminism = NondeterminismPolicy::Fail;
      } else if (nondet == "pick-lowest") {
        cfg.on_nondeterminism = NondeterminismPolicy::PickLowestTileId;
      } else {
        throw UsageError("--on-nondet must be fail or pick-lowest");
      }
      if (order == "lex") {
        cfg.site_order = SiteOrder::Lexicographic;
      } else if (order == "insertion") {
        cfg.site_order = SiteOrder::Insertion;
      } else {
        throw UsageError("--order must be lex or insertion");
      }
      const auto parsed = parse(read_file(tile_path));
      for (const auto& w : parsed.doc.warnings) err << "warning: " << w << '\n';
      const SimResult sim = run(parsed.system, cfg);
      const RasterImage img = render(sim.assembly, parsed.system);
      if (!out_path.empty()) write_file(out_path, write_ppm(img, !ascii));
      if (!event_log.empty()) {
        std::ostringstream log;
        write_event_log(log, sim.events);
        write_file(event_log, log.str());
      }
      out << "halted: " << to_string(sim.halted_reason) << "\nsteps: " << sim.steps
          << "\nplaced: " << sim.assembly.size() << "\nsize: " << img.width << 'x' << img.height
          << "\nnondeterministic sites: " << sim.nondeterministic_sites.size() << "\nwall_time_s: " << std::fixed
          << std::setprecision(6) << sim.wall_time << std::defaultfloat << '\n';
      return sim.halted_reason == HaltReason::StepCap ? kStepCap : kOk;
    }
    if (verify->parsed()) {
      if (v_img->parsed()) {
        CompileOptions opts{parse_mode(mode_text), max_dim};
        const auto report = verify_roundtrip(load_image_file(image_path), opts);
        out << "tiles: " << report.tile_count << "\nglues: " << report.glue_count << "\nsteps: " << report.steps
            << "\nwall_time_s: " << std::fixed << std::setprecision(6) << report.wall_time << std::defaultfloat
            << '\n';
        if (report.size_mismatch) out << "rendered image has the wrong size\n";
        if (report.first_mismatch) {
          const auto& m = *report.first_mismatch;
          out << "first mismatch: (" << m.x << "," << m.y << ") expected " << m.expected << ", got " << m.actual
              << '\n';
        }
        out << (report.pass ? "PASS" : "FAIL") << '\n';
        return report.pass ? kOk : kIoError;
      }
      check_n(n);
      if (v_u->parsed()) {
        return report_pattern(gen_uniform(n, shift), ShiftSpec{n, UniformShift{shift}},
                              [&](int r, int c) { return uniform_oracle(n, shift, r, c); }, out);
      }
      const auto shifts = shifts_for(n, shifts_text);
      const ShiftSpec spec{n, PerRowShift{shifts}};
      if (v_nu->parsed()) {
        return report_pattern(gen_nonuniform(n, shifts), spec,
                              [&](int r, int c) { return nonuniform_oracle(n, shifts, r, c); }, out);
      }
      return report_pattern(gen_transform(n, shifts, rotate_k), spec,
                            [&](int r, int c) {
                              const auto label = nonuniform_oracle(n, shifts, r, c);
                              return r == 0 && c == 0 ? label : wrap1(label - rotate_k, n);
                            },
                            out);
    }
    if (stats->parsed()) {
      const CompileOptions opts{parse_mode(mode_text), max_dim};
      std::vector<StatsRow> rows;
      if (!dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
          if (entry.path().extension() == ".ppm") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
          try {
            rows.push_back(measure(load_image_file(f.string()), opts));
          } catch (const std::exception& e) {
            StatsRow bad;
            bad.error = f.filename().string() + ": " + e.what();
            rows.push_back(bad);
          }
        }
      } else {
        std::vector<int> sizes;
        if (!sizes_text.empty()) {
          for (auto v : parse_int_list(sizes_text)) sizes.push_back(static_cast<int>(v));
        }
        rows = stats_for_sizes(sizes, seed, opts);
      }
      write_stats_csv(out, rows);
      return kOk;
    }
  } catch (const NondeterminismError& e) {
    err << "error: " << e.what() << '\n';
    return kNondeterministic;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    // usage, parse, validation and size-cap errors
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace atam::cli
