// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace nnts;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv round-trip is bit-exact") {
  RngState rng(131);
  MnntsParams p = random_params(DimVector({2, 1}), rng);
  AngularDataset d = sample(p, rng, 37);
  const std::string path = temp_path("nnts_roundtrip.csv");
  FileGuard g{path};
  write_csv(d, path);
  IngestReport rep = ingest_csv(path, AngleUnit::radians);
  CHECK(rep.rows_dropped == 0);
  CHECK(rep.data.var_names == d.var_names);
  REQUIRE(rep.data.angles.size() == d.angles.size());
  for (std::size_t i = 0; i < d.angles.size(); ++i) CHECK(rep.data.angles[i] == d.angles[i]);
}

TEST_CASE("degrees convert and reduce") {
  const std::string path = temp_path("nnts_degrees.csv");
  FileGuard g{path};
  write_text(path, "dir\n180\n360.0\n540\n-90\n");
  IngestReport rep = ingest_csv(path, AngleUnit::degrees);
  REQUIRE(rep.data.n_obs == 4);
  CHECK(rep.data.at(0, 0) == Catch::Approx(pi));
  CHECK(rep.data.at(1, 0) == 0.0);
  CHECK(rep.data.at(2, 0) == Catch::Approx(pi));
  CHECK(rep.data.at(3, 0) == Catch::Approx(1.5 * pi));
  CHECK(rep.data.source_unit == AngleUnit::degrees);
}

TEST_CASE("missing rows are dropped and counted") {
  const std::string path = temp_path("nnts_missing.csv");
  FileGuard g{path};
  write_text(path, "a,b\n1.0,2.0\nNA,0.5\n0.25,1.5\n");
  IngestReport rep = ingest_csv(path, AngleUnit::radians);
  CHECK(rep.data.n_obs == 2);
  CHECK(rep.rows_dropped == 1);

  write_text(path, "a,b\n1.0,2.0\n?,0.5\n");
  IngestReport custom = ingest_csv(path, AngleUnit::radians, "?");
  CHECK(custom.data.n_obs == 1);
  CHECK(custom.rows_dropped == 1);
}

TEST_CASE("ingestion reports ranges and handles CRLF") {
  const std::string path = temp_path("nnts_crlf.csv");
  FileGuard g{path};
  write_text(path, "a,b\r\n1.0,0.5\r\n3.0,2.5\r\n");
  IngestReport rep = ingest_csv(path, AngleUnit::radians);
  REQUIRE(rep.ranges.size() == 2);
  CHECK(rep.ranges[0].first == 1.0);
  CHECK(rep.ranges[0].second == 3.0);
  CHECK(rep.ranges[1].first == 0.5);
  CHECK(rep.ranges[1].second == 2.5);
}

TEST_CASE("ingestion failures carry the location") {
  const std::string path = temp_path("nnts_bad.csv");
  FileGuard g{path};
  write_text(path, "a,b\n1.0,2.0\n0.5,oops\n");
  try {
    ingest_csv(path, AngleUnit::radians);
    FAIL("expected a data error");
  } catch (const DataError& e) {
    // locations are file lines, header included
    const std::string msg = e.what();
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }

  write_text(path, "a,b\n1.0\n");
  CHECK_THROWS_AS(ingest_csv(path, AngleUnit::radians), DataError);
  write_text(path, "a,b\nNA,NA\n");
  CHECK_THROWS_AS(ingest_csv(path, AngleUnit::radians), DataError);  // nothing usable
  write_text(path, "");
  CHECK_THROWS_AS(ingest_csv(path, AngleUnit::radians), DataError);
  CHECK_THROWS_AS(ingest_csv(temp_path("nnts_does_not_exist.csv"), AngleUnit::radians),
                  DataError);
}

TEST_CASE("model round-trip is bit-exact with metadata") {
  RngState rng(133);
  MnntsParams p = random_params(DimVector({3, 2}), rng);
  ModelMetadata meta;
  meta.method = "ml";
  meta.loglik = -123.456789012345;
  meta.n_obs = 2017;
  meta.var_names = {"alpha", "beta"};
  const std::string path = temp_path("nnts_model.json");
  FileGuard g{path};
  save_model(p, meta, path);
  LoadedModel m = load_model(path);
  CHECK(m.format_version == model_format_version);
  CHECK(m.params.dims.m == p.dims.m);
  REQUIRE(m.params.c.size() == p.c.size());
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    CHECK(m.params.c[i].real() == p.c[i].real());
    CHECK(m.params.c[i].imag() == p.c[i].imag());
  }
  CHECK(m.meta.method == "ml");
  CHECK(m.meta.loglik.value() == -123.456789012345);
  CHECK(m.meta.n_obs.value() == 2017);
  CHECK(m.meta.var_names == meta.var_names);
}

TEST_CASE("model loading rejects malformed files") {
  const std::string path = temp_path("nnts_badmodel.json");
  FileGuard g{path};
  write_text(path, "not json at all");
  CHECK_THROWS_AS(load_model(path), DataError);
  write_text(path, "{\"format_version\": 99, \"dims\": [1], \"c_re\": [1, 0], \"c_im\": [0, 0]}");
  CHECK_THROWS_AS(load_model(path), DataError);
  write_text(path, "{\"format_version\": 1, \"dims\": [1], \"c_re\": [1, 0], \"c_im\": [0]}");
  CHECK_THROWS_AS(load_model(path), DataError);
  // right shape, off the constraint sphere
  write_text(path, "{\"format_version\": 1, \"dims\": [1], \"c_re\": [1, 0], \"c_im\": [0, 0]}");
  CHECK_THROWS_AS(load_model(path), DataError);
  CHECK_THROWS_AS(load_model(temp_path("nnts_missing_model.json")), DataError);
}

TEST_CASE("saving an invalid model is refused") {
  RngState rng(135);
  MnntsParams p = random_params(DimVector({1, 1}), rng);
  p.c[0] *= 2.0;
  ModelMetadata meta;
  const std::string path = temp_path("nnts_refused.json");
  FileGuard g{path};
  CHECK_THROWS_AS(save_model(p, meta, path), ArgumentError);
}
