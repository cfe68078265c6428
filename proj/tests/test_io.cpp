#include <doctest.h>

#include <filesystem>
#include <limits>

#include "anw/config.hpp"
#include "anw/error.hpp"
#include "anw/io.hpp"
#include "support.hpp"

using namespace anw;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "anw-tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ComplexMatrix awkward_matrix() {
  testref::Random rng(2);
  ComplexMatrix m(5, 4);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = cplx(rng.uniform(-1e3, 1e3) / 3.0, rng.uniform(-1, 1) * 1e-200);
  m(0, 0) = cplx(std::numeric_limits<double>::denorm_min(), -0.0);
  m(1, 1) = cplx(std::numeric_limits<double>::max(), 0.1);
  m(2, 2) = cplx(1.0 / 3.0, -2.0 / 7.0);
  return m;
}

}  // namespace

TEST_CASE("matrices survive a write and read unchanged") {
  const fs::path dir = scratch("roundtrip");
  const auto m = awkward_matrix();

  io::write_json(dir / "m.json", io::to_json(m));
  CHECK(io::complex_from_json(io::read_json(dir / "m.json")) == m);

  io::write_csv_pair(dir / "m", m);
  CHECK(io::read_csv_pair(dir / "m") == m);
  CHECK(io::load_matrix(dir / "m.re.csv") == m);
  CHECK(io::load_matrix(dir / "m") == m);
  CHECK(io::load_matrix(dir / "m.json") == m);

  RealMatrix r(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = std::real(m(i, j)) * 1e-17;
  io::write_csv(dir / "r.csv", r);
  CHECK(io::read_csv(dir / "r.csv") == r);
  io::write_json(dir / "r.json", io::to_json(r));
  CHECK(io::real_from_json(io::read_json(dir / "r.json")) == r);
}

TEST_CASE("format_double") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(io::format_double(std::numeric_limits<double>::quiet_NaN()), ValidationError);
}

TEST_CASE("malformed matrix files are rejected") {
  const fs::path dir = scratch("malformed");
  io::write_text(dir / "ragged.csv", "1,2\n3\n");
  io::write_text(dir / "words.csv", "1,x\n3,4\n");
  io::write_text(dir / "broken.json", "{\"rows\": 2");
  io::write_text(dir / "short.json", R"({"rows": 2, "cols": 2, "data": [[1, 2]]})");
  CHECK_THROWS_AS(io::read_csv(dir / "ragged.csv"), ValidationError);
  CHECK_THROWS_AS(io::read_csv(dir / "words.csv"), ValidationError);
  CHECK_THROWS_AS(io::read_json(dir / "broken.json"), ValidationError);
  CHECK_THROWS_AS(io::load_matrix(dir / "short.json"), ValidationError);
  CHECK_THROWS(io::load_matrix(dir / "missing.json"));
}

TEST_CASE("run config parsing") {
  const auto cfg = parse_run_config(nlohmann::json::parse(R"({
    "profile": {"kind": "parabolic", "n": 8, "c0": 2.0},
    "pump": {"preset": "pair_center"},
    "z": [1, 20],
    "optimizer": {"restarts": 3, "seed": 9, "z_max": 25}
  })"));
  CHECK(cfg.profile.kind == ProfileKind::parabolic);
  CHECK(cfg.profile.n == 8);
  CHECK(cfg.profile.c0 == 2.0);
  CHECK(cfg.z == std::vector<double>{1.0, 20.0});
  CHECK(cfg.optimizer.restarts == 3);
  CHECK(cfg.optimizer.seed == 9);
  CHECK(cfg.optimizer.z_max == 25.0);
  CHECK(cfg.optimizer.z_min == 0.0);

  // Full dump parses back to the same document.
  CHECK(to_json(parse_run_config(to_json(cfg))) == to_json(cfg));

  const auto custom = parse_run_config(nlohmann::json::parse(
      R"({"profile": {"kind": "custom", "n": 3, "factors": [1, 0.5]}, "pump": {"amplitudes": [1, 0, 1], "phases": [0, 0, 3.14]}})"));
  CHECK(custom.pump.build(3, 1.0).size() == 3);
}

TEST_CASE("run config rejects unknown keys and bad values") {
  for (const char* text : {R"({"profle": {}})", R"({"profile": {"kindd": "homogeneous"}})",
                           R"({"optimizer": {"restart": 3}})", R"({"formats": {"svg": true}})",
                           R"({"profile": {"n": 0}})", R"({"profile": {"n": "seven"}})", R"({"z": [-1]})",
                           R"({"pump": {"preset": "nowhere"}})", R"({"optimizer": {"z_min": 5, "z_max": 1}})", "[]"}) {
    const std::string shown = text;
    CAPTURE(shown);
    CHECK_THROWS_AS(parse_run_config(nlohmann::json::parse(text)).validate(), ValidationError);
  }
}
