#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <doctest.h>

#include "slitsim/config_file.hpp"
#include "slitsim/io.hpp"
#include "slitsim/model.hpp"

namespace {

using namespace slitsim;
namespace fs = std::filesystem;

double parse_back(const std::string& text) {
  double v = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), v);
  return v;
}

fs::path fresh_dir(const char* leaf) {
  const fs::path dir = fs::temp_directory_path() / "slitsim_io_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SimulationConfig counter_moving_config() {
  PhysicalParams params;
  SlitConfig left;
  left.x0 = -5.0;
  left.v = 0.5;
  SlitConfig right;
  right.x0 = 5.0;
  right.v = -0.5;
  return validate(params, {left, right}, GridSpec{});
}

TEST_CASE("format_double round-trips the exact binary value") {
  for (const double v :
       {0.0, 1.0, -1.0, 0.1, 1.0 / 3.0, 1e-300, 1e300, std::numbers::pi,
        -2.2, 0.39894228040143267794, 6.103515625e-05}) {
    const std::string text = format_double(v);
    CHECK(parse_back(text) == v);
  }
  CHECK(format_double(-0.0) == "-0");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("the config fingerprint reacts to every field") {
  const SimulationConfig base = counter_moving_config();
  const std::uint64_t h0 = config_fingerprint(base);
  CHECK(h0 == config_fingerprint(base));  // deterministic

  SimulationConfig changed = base;
  changed.slits[0].v = 0.25;
  CHECK(config_fingerprint(changed) != h0);

  changed = base;
  changed.grid.nt = 401;
  CHECK(config_fingerprint(changed) != h0);

  changed = base;
  changed.mode = PhaseMode::qm;
  CHECK(config_fingerprint(changed) != h0);

  changed = base;
  changed.params.omega = 2.0;
  CHECK(config_fingerprint(changed) != h0);
}

TEST_CASE("files round-trip arbitrary bytes") {
  const fs::path dir = fresh_dir("bytes");
  const std::string path = (dir / "blob.bin").string();
  std::string payload = "header\n";
  payload.push_back('\0');
  payload += "\xff\x00\x7f tail";
  write_file(path, payload);
  CHECK(read_file(path) == payload);
}

TEST_CASE("reading a missing file raises an i/o error naming the path") {
  try {
    read_file("/definitely/not/here.txt");
    FAIL("expected io_error");
  } catch (const io_error& e) {
    CHECK(std::string(e.what()).find("/definitely/not/here.txt") !=
          std::string::npos);
  }
}

TEST_CASE("the intensity image encodes scaled big-endian 16-bit rows") {
  // Two frames of three samples; the global maximum 4.0 sets the scale.
  // Frame 1 (the later time) must be the first image row.
  const std::vector<std::vector<double>> frames{{0.0, 1.0, 2.0},
                                                {1.0, 3.0, 4.0}};
  const std::string bytes = render_intensity_pgm(frames);

  const std::string header = "P5\n3 2\n65535\n";
  REQUIRE(bytes.size() == header.size() + 2 * 2 * 3);
  CHECK(bytes.substr(0, header.size()) == header);

  auto sample = [&](int row, int col) {
    const std::size_t off = header.size() + 2 * (3 * row + col);
    return (static_cast<unsigned>(static_cast<unsigned char>(bytes[off]))
            << 8) |
           static_cast<unsigned>(static_cast<unsigned char>(bytes[off + 1]));
  };
  // llround(v / 4 * 65535)
  CHECK(sample(0, 0) == 16384u);  // later frame first
  CHECK(sample(0, 1) == 49151u);
  CHECK(sample(0, 2) == 65535u);
  CHECK(sample(1, 0) == 0u);
  CHECK(sample(1, 1) == 16384u);
  CHECK(sample(1, 2) == 32768u);
}

TEST_CASE("an all-zero history renders as a black image") {
  const std::vector<std::vector<double>> frames{{0.0, 0.0}, {0.0, 0.0}};
  const std::string bytes = render_intensity_pgm(frames);
  const std::string header = "P5\n2 2\n65535\n";
  CHECK(bytes.substr(header.size()) == std::string(8, '\0'));
}

TEST_CASE("fields tables round-trip through their CSV form") {
  const fs::path dir = fresh_dir("fields");
  const std::string path = (dir / "fields.csv").string();
  std::string csv = std::string(kFieldsCsvHeader) + "\n";
  // Two frames over two points; only t, x, p matter for re-rendering.
  csv += "0,-1,0.25,0,0,0,0,0,0,0\n";
  csv += "0,1,0.5,0,0,0,0,0,0,0\n";
  csv += "0.5,-1,0.125,0,0,0,0,0,0,0\n";
  csv += "0.5,1,0.75,0,0,0,0,0,0,0\n";
  write_file(path, csv);

  const FieldsTable table = read_fields_csv(path);
  CHECK(table.ts == std::vector<double>{0.0, 0.5});
  CHECK(table.xs == std::vector<double>{-1.0, 1.0});
  REQUIRE(table.p.size() == 2);
  CHECK(table.p[0] == std::vector<double>{0.25, 0.5});
  CHECK(table.p[1] == std::vector<double>{0.125, 0.75});
}

TEST_CASE("CSV structural defects are reported with their line") {
  const fs::path dir = fresh_dir("badcsv");
  auto expect_error = [&](const char* leaf, const std::string& content,
                          const std::string& needle) {
    const std::string path = (dir / leaf).string();
    write_file(path, content);
    try {
      read_fields_csv(path);
      FAIL_CHECK("expected io_error for " << leaf);
    } catch (const io_error& e) {
      const std::string msg = e.what();
      INFO("message: " << msg);
      CHECK(msg.find(needle) != std::string::npos);
    }
  };

  expect_error("empty.csv", "", "line 1");
  expect_error("wrong_header.csv", "a,b,c\n1,2,3\n", "line 1");
  const std::string header = std::string(kFieldsCsvHeader) + "\n";
  expect_error("no_rows.csv", header, "no data rows");
  expect_error("short_row.csv", header + "0,1,2\n", "line 2");
  expect_error("bad_number.csv",
               header + "0,0,zebra,0,0,0,0,0,0,0\n", "line 2");
  expect_error("ragged.csv",
               header + "0,-1,1,0,0,0,0,0,0,0\n0,1,1,0,0,0,0,0,0,0\n"
                        "1,-1,1,0,0,0,0,0,0,0\n",
               "multiple");
  expect_error("wrong_x.csv",
               header + "0,-1,1,0,0,0,0,0,0,0\n0,1,1,0,0,0,0,0,0,0\n"
                        "1,-1,1,0,0,0,0,0,0,0\n1,2,1,0,0,0,0,0,0,0\n",
               "x grid");
  expect_error("t_backwards.csv",
               header + "1,-1,1,0,0,0,0,0,0,0\n1,1,1,0,0,0,0,0,0,0\n"
                        "0,-1,1,0,0,0,0,0,0,0\n0,1,1,0,0,0,0,0,0,0\n",
               "ascending");
}

TEST_CASE("the config parser fills every recognized key") {
  const SimulationConfig config = parse_config(
      "# reference setup\n"
      "hbar = 2\n"
      "mass = 3\n"
      "omega = 0.5\n"
      "slit1.x0 = -4\n"
      "slit1.v = 0.25\n"
      "slit1.sigma0 = 1.5\n"
      "slit1.dphi = 0.1\n"
      "slit2.x0 = 4\n"
      "slit2.v = -0.25\n"
      "slit2.sigma0 = 1.5\n"
      "slit2.dphi = -0.1\n"
      "grid.x_min = -20\n"
      "grid.x_max = 20\n"
      "grid.nx = 401\n"
      "grid.t_min = 1\n"
      "grid.t_max = 9\n"
      "grid.nt = 33\n"
      "phase_mode = qm\n");
  CHECK(config.params.hbar == 2.0);
  CHECK(config.params.mass == 3.0);
  CHECK(config.params.omega == 0.5);
  REQUIRE(config.slits.size() == 2);
  CHECK(config.slits[0].x0 == -4.0);
  CHECK(config.slits[1].dphi == -0.1);
  CHECK(config.grid.nx == 401);
  CHECK(config.grid.t_min == 1.0);
  CHECK(config.mode == PhaseMode::qm);
}

TEST_CASE("omitted keys fall back to the defaults") {
  const SimulationConfig config = parse_config("slit1.v = 0.5\n");
  CHECK(config.params.hbar == 1.0);
  CHECK(config.slits.size() == 1);  // no slit2.* key appeared
  CHECK(config.slits[0].v == 0.5);
  CHECK(config.slits[0].sigma0 == 1.0);
  CHECK(config.grid.nx == 1501);
  CHECK(config.mode == PhaseMode::paper);
}

TEST_CASE("any slit2 key brings the second channel into existence") {
  const SimulationConfig config = parse_config("slit2.x0 = 5\n");
  REQUIRE(config.slits.size() == 2);
  CHECK(config.slits[1].x0 == 5.0);
  CHECK(config.slits[1].v == 0.0);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const SimulationConfig config = parse_config(
      "\n"
      "   # full-line comment\n"
      "  hbar=2   # trailing comment\n"
      "\tmass\t=\t4\n");
  CHECK(config.params.hbar == 2.0);
  CHECK(config.params.mass == 4.0);
}

TEST_CASE("the long phase-mode spellings are accepted") {
  CHECK(parse_config("phase_mode = paper-verbatim\n").mode ==
        PhaseMode::paper);
  CHECK(parse_config("phase_mode = qm-exact\n").mode == PhaseMode::qm);
}

TEST_CASE("config defects are rejected with their line number") {
  auto expect_error = [](const std::string& content,
                         const std::string& needle) {
    try {
      parse_config(content);
      FAIL_CHECK("expected invalid_config for: " << content);
    } catch (const invalid_config& e) {
      const std::string msg = e.what();
      INFO("message: " << msg);
      CHECK(msg.find(needle) != std::string::npos);
    }
  };

  expect_error("hbar = 1\nwho = 3\n", "line 2");
  expect_error("who = 3\n", "unknown key 'who'");
  expect_error("hbar\n", "expected key = value");
  expect_error("hbar =\n", "no value");
  expect_error("hbar = abc\n", "not a number");
  expect_error("grid.nx = 1.5\n", "not an integer");
  expect_error("hbar = 1\nhbar = 2\n", "duplicate key 'hbar'");
  expect_error("phase_mode = verbatim\n", "phase_mode");
  expect_error("slit1.sigma0 = -1\n", "sigma0");
  expect_error("grid.nx = 1\n", "nx");
}

TEST_CASE("loading a config names the file in parse errors") {
  const fs::path dir = fresh_dir("cfg");
  const std::string path = (dir / "bad.cfg").string();
  write_file(path, "grid.nx = zebra\n");
  try {
    load_config(path);
    FAIL("expected invalid_config");
  } catch (const invalid_config& e) {
    CHECK(std::string(e.what()).find("bad.cfg") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), io_error);
}

}  // namespace
