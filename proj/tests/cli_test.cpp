#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "atam/cli.hpp"
#include "atam/generators.hpp"
#include "atam/tilefile.hpp"

using namespace atam;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "atamkit");
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "atamkit_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string fixture(const std::string& name) { return std::string(ATAM_FIXTURE_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("parse_int_list") {
  CHECK(cli::parse_int_list("2,3,1,2,3") == std::vector<std::int64_t>{2, 3, 1, 2, 3});
  CHECK(cli::parse_int_list("-1, 4") == std::vector<std::int64_t>{-1, 4});
  CHECK(cli::parse_int_list("").empty());
  CHECK_THROWS_AS(cli::parse_int_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_int_list("1,a"), std::invalid_argument);
}

TEST_CASE("gen commands") {
  SUBCASE("gen-uniform writes the tile file to stdout") {
    const auto r = call({"gen-uniform", "-N", "4", "-S", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == emit(gen_uniform(4, 1).system));
    CHECK(parse(r.out).system.tiles.size() == 11);
  }
  SUBCASE("gen-uniform to a file with a negative shift") {
    const auto path = (scratch() / "u.tile").string();
    const auto r = call({"gen-uniform", "-N", "5", "-S", "-1", "-o", path});
    CHECK(r.code == 0);
    CHECK(r.out == "tiles: 14\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == emit(gen_uniform(5, 4).system));
  }
  SUBCASE("N below 2 is a usage error") { CHECK(call({"gen-uniform", "-N", "1", "-S", "0"}).code == 2); }
  SUBCASE("missing option is a usage error") { CHECK(call({"gen-uniform", "-N", "4"}).code == 2); }
  SUBCASE("gen-nonuniform reports both counts") {
    const auto r = call({"gen-nonuniform", "-N", "6", "-S", "2,3,1,2,3"});
    CHECK(r.code == 0);
    CHECK(parse(r.out).system.tiles.size() == 29);
    CHECK(r.err.find("tiles: 29") != std::string::npos);
    CHECK(r.err.find("distinct shifts: 3") != std::string::npos);
    CHECK(r.err.find(": 28 (seed not included)") != std::string::npos);
  }
  SUBCASE("gen-nonuniform arity") { CHECK(call({"gen-nonuniform", "-N", "6", "-S", "1,2"}).code == 2); }
  SUBCASE("gen-transform with k=0 matches gen-nonuniform") {
    const auto a = call({"gen-transform", "-N", "5", "-S", "1,2,3,4", "-k", "0"});
    const auto b = call({"gen-nonuniform", "-N", "5", "-S", "1,2,3,4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  SUBCASE("unwritable output path") {
    CHECK(call({"gen-uniform", "-N", "4", "-S", "1", "-o", "/nonexistent/dir/x.tile"}).code == 1);
  }
  SUBCASE("no subcommand") { CHECK(call({}).code == 2); }
  SUBCASE("help") { CHECK(call({"--help"}).code == 0); }
}

TEST_CASE("compile") {
  SUBCASE("16x16 fixture") {
    const auto r = call({"compile", fixture("f16.ppm")});
    CHECK(r.code == 0);
    CHECK(parse(r.out).system.tiles.size() == 256);
    CHECK(r.err.find("tile_types: 256") != std::string::npos);
  }
  SUBCASE("64x64 rapid") {
    const auto r = call({"compile", fixture("f64.ppm"), "--mode", "rapid"});
    CHECK(r.code == 0);
    CHECK(parse(r.out).system.tiles.size() == 1024);
  }
  SUBCASE("size cap") {
    CHECK(call({"compile", fixture("f64.ppm"), "--max-dim", "32"}).code == 2);
    CHECK(call({"compile", fixture("f64.ppm"), "--max-dim", "64"}).code == 0);
  }
  SUBCASE("unreadable path") { CHECK(call({"compile", "/nonexistent/image.ppm"}).code == 1); }
  SUBCASE("corrupt image") {
    const auto path = write_temp("bad.ppm", "P6 4 4 255\nxyz");
    const auto r = call({"compile", path});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") == 0);
  }
  SUBCASE("bad mode") { CHECK(call({"compile", fixture("f16.ppm"), "--mode", "fast"}).code == 2); }
}

TEST_CASE("run") {
  const auto tile = write_temp("u4.tile", emit(gen_uniform(4, 1).system));
  SUBCASE("grows the square and renders it") {
    const auto ppm = (scratch() / "u4.ppm").string();
    const auto log = (scratch() / "u4.log").string();
    const auto r = call({"run", tile, "-o", ppm, "--event-log", log});
    CHECK(r.code == 0);
    CHECK(r.out.find("halted: quiescent") != std::string::npos);
    CHECK(r.out.find("steps: 15\n") != std::string::npos);
    CHECK(r.out.find("size: 4x4\n") != std::string::npos);
    CHECK(load_image_file(ppm).width == 4);
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(split_lines(ss.str()).size() == 15);
  }
  SUBCASE("step cap exits 3") {
    const auto r = call({"run", tile, "--max-steps", "1"});
    CHECK(r.code == 3);
    CHECK(r.out.find("steps: 1\n") != std::string::npos);
  }
  SUBCASE("bounding box") {
    const auto r = call({"run", tile, "--box", "0,1,0,1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("placed: 4\n") != std::string::npos);
    CHECK(call({"run", tile, "--box", "0,1"}).code == 2);
  }
  SUBCASE("listing without header warns") {
    const auto r = call({"run", fixture("published_listing.tile")});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning:") != std::string::npos);
  }
  SUBCASE("nondeterminism") {
    TileSystem sys = gen_uniform(4, 1).system;
    TileType twin;
    twin.id = static_cast<TileId>(sys.tiles.size() + 1);
    twin.edges = {GlueLabel{3}, GlueLabel{4}, GlueLabel{2}, GlueLabel{3}};
    sys.tiles.push_back(twin);
    const auto path = write_temp("amb.tile", emit(sys));
    CHECK(call({"run", path}).code == 4);
    const auto r = call({"run", path, "--on-nondet", "pick-lowest", "--order", "insertion"});
    CHECK(r.code == 0);
    CHECK(r.out.find("nondeterministic sites: 0\n") == std::string::npos);
  }
  SUBCASE("parse error exits 2") {
    const auto path = write_temp("broken.tile", "{1 2 3}(0)\n");
    const auto r = call({"run", path});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 1") != std::string::npos);
  }
  SUBCASE("missing file exits 1") { CHECK(call({"run", "/nonexistent.tile"}).code == 1); }
}

TEST_CASE("verify") {
  CHECK(call({"verify", "uniform", "-N", "8", "-S", "3"}).code == 0);
  const auto nu = call({"verify", "nonuniform", "-N", "6", "-S", "2,3,1,2,3"});
  CHECK(nu.code == 0);
  CHECK(nu.out.find("PASS") != std::string::npos);
  CHECK(call({"verify", "transform", "-N", "5", "-S", "1,0,4,2", "-k", "2"}).code == 0);
  CHECK(call({"verify", "image", fixture("f16.ppm")}).code == 0);
  CHECK(call({"verify", "image", fixture("f64.ppm"), "--mode", "rapid"}).code == 0);
}

TEST_CASE("stats") {
  SUBCASE("sizes sweep") {
    const auto r = call({"stats", "--sizes", "4,8,16,32", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == cli::kStatsHeader);
    std::vector<std::size_t> tiles, bytes;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::vector<std::string> f;
      std::stringstream ss(lines[i]);
      for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
      REQUIRE(f.size() == 6);
      CHECK(f[0] == f[1]);
      tiles.push_back(std::stoul(f[2]));
      bytes.push_back(std::stoul(f[3]));
      CHECK(std::stol(f[4]) == static_cast<long>(tiles.back()) - 1);
    }
    CHECK(tiles == std::vector<std::size_t>{16, 64, 256, 1024});
    for (std::size_t i = 1; i < bytes.size(); ++i) CHECK(bytes[i] > bytes[i - 1]);
  }
  SUBCASE("empty size list is header only") {
    const auto r = call({"stats", "--sizes", ""});
    CHECK(r.code == 0);
    CHECK(r.out == std::string(cli::kStatsHeader) + "\n");
  }
  SUBCASE("directory with a bad file") {
    const auto dir = scratch() / "stats_dir";
    fs::create_directories(dir);
    fs::copy_file(fixture("f16.ppm"), dir / "a.ppm", fs::copy_options::overwrite_existing);
    std::ofstream(dir / "b.ppm", std::ios::binary) << "P6 2 2 255\n";
    const auto lines = split_lines(call({"stats", "--dir", dir.string()}).out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[1].rfind("16,16,256,", 0) == 0);
    CHECK(lines[2].rfind("0,0,,,,,b.ppm: ", 0) == 0);
  }
  SUBCASE("csv writer") {
    cli::StatsRow ok{2, 2, 4, 100, 3, 0.5, std::nullopt};
    cli::StatsRow bad{3, 3, 0, 0, 0, 0.0, std::string("too big")};
    std::ostringstream os;
    cli::write_stats_csv(os, {ok, bad});
    CHECK(os.str() == std::string(cli::kStatsHeader) + "\n2,2,4,100,3,0.500000\n3,3,,,,,too big\n");
  }
}
