#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <string>

#include "json.hpp"
#include "qmv/qmv.h"

using json = nlohmann::json;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { qmv_string_free(p); }
  json parse() const { return json::parse(std::string(p)); }
};

struct Words {
  uint64_t* p = nullptr;
  uint64_t count = 0;
  ~Words() { qmv_words_free(p); }
};

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(qmv_version()) > 0);
  uint32_t d = 0;
  CHECK(qmv_distance(3, 0x8, 0x1, &d) == QMV_ERR_ARG);  // bit 4 beyond n=3
  CHECK(std::strlen(qmv_last_error()) > 0);
}

TEST_CASE("distance and layers") {
  uint32_t d = 0;
  REQUIRE(qmv_distance(3, 0x3, 0x6, &d) == QMV_OK);
  CHECK(d == 2);

  Words layer;
  REQUIRE(qmv_enumerate_layer(4, 2, 0, &layer.p, &layer.count) == QMV_OK);
  CHECK(layer.count == 6);
  CHECK(layer.p[0] == 0x3);

  Words big;
  CHECK(qmv_enumerate_layer(31, 2, 0, &big.p, &big.count) == QMV_ERR_BUDGET);
  CHECK(qmv_enumerate_layer(31, 2, 1, &big.p, &big.count) == QMV_OK);
  CHECK(big.count == 465);
}

TEST_CASE("visibility through the C surface") {
  uint64_t blockers[] = {0x1, 0x2};
  int vis = -1;
  Str rec;
  REQUIRE(qmv_visible(2, 0x0, 0x3, blockers, 2, 0, &vis, &rec.p) == QMV_OK);
  CHECK(vis == 0);
  json j = rec.parse();
  CHECK(j["schema"] == "qmv.visibility/1");
  CHECK(j["visible"] == false);
  CHECK(j["interior_obstacles"] == 2);

  Str rec3;
  REQUIRE(qmv_visible(3, 0x0, 0x7, blockers, 2, 0, &vis, &rec3.p) == QMV_OK);
  CHECK(vis == 1);
  json j3 = rec3.parse();
  CHECK(j3["path"].size() == 4);
  CHECK(j3["path"][0] == "0x0");
  CHECK(j3["path"][3] == "0x7");
}

TEST_CASE("set check and obstruction search") {
  uint64_t whole_q2[] = {0x0, 0x1, 0x2, 0x3};
  int is_mv = -1;
  Str rec;
  REQUIRE(qmv_check_set(2, whole_q2, 4, 1, 0, &is_mv, &rec.p) == QMV_OK);
  CHECK(is_mv == 0);
  json j = rec.parse();
  CHECK(j["witness"]["u"] == "0x0");
  CHECK(j["witness"]["v"] == "0x3");

  int found = -1;
  Str obs;
  REQUIRE(qmv_find_obstruction(2, whole_q2, 4, 2, 0, &found, &obs.p) == QMV_OK);
  CHECK(found == 1);
  json jo = obs.parse();
  CHECK(jo["layers"] == json::array({0, 1, 2}));

  uint64_t mv_set[] = {0x0, 0x1, 0x2};
  REQUIRE(qmv_check_set(2, mv_set, 3, 1, 0, &is_mv, nullptr) == QMV_OK);
  CHECK(is_mv == 1);
  REQUIRE(qmv_find_obstruction(2, mv_set, 3, 2, 0, &found, nullptr) == QMV_OK);
  CHECK(found == 0);
}

TEST_CASE("cube coloring lifecycle: build, serialize, verify") {
  qmv_coloring* coloring = nullptr;
  Str reports;
  REQUIRE(qmv_color_cube(6, 3, 2, 1, 0, 2, 0, &coloring, &reports.p) == QMV_OK);
  REQUIRE(coloring != nullptr);
  CHECK(qmv_coloring_n(coloring) == 6);
  CHECK(qmv_coloring_class_count(coloring) <= 6);
  CHECK(qmv_coloring_class_of(coloring, 0) >= 1);

  // one report line per layer
  int lines = 0;
  for (const char* p = reports.p; *p; ++p)
    if (*p == '\n') ++lines;
  CHECK(lines == 7);

  Str js;
  REQUIRE(qmv_coloring_to_json(coloring, &js.p) == QMV_OK);
  qmv_coloring* back = nullptr;
  REQUIRE(qmv_coloring_from_json(js.p, &back) == QMV_OK);
  CHECK(qmv_coloring_class_count(back) == qmv_coloring_class_count(coloring));

  const char* path = "/tmp/qmv-capi-coloring.json";
  REQUIRE(qmv_coloring_write_file(coloring, path) == QMV_OK);
  qmv_coloring* loaded = nullptr;
  REQUIRE(qmv_coloring_read_file(path, &loaded) == QMV_OK);
  Str js2;
  REQUIRE(qmv_coloring_to_json(loaded, &js2.p) == QMV_OK);
  CHECK(std::string(js.p) == std::string(js2.p));
  std::remove(path);

  int ok = -1;
  Str verdict;
  REQUIRE(qmv_verify_coloring(coloring, 2, 0, &ok, &verdict.p) == QMV_OK);
  CHECK(ok == 1);
  CHECK(verdict.parse()["ok"] == true);

  qmv_coloring_free(coloring);
  qmv_coloring_free(back);
  qmv_coloring_free(loaded);
}

TEST_CASE("verify flags a handmade single-class file") {
  const char* text =
      "{\"schema\":\"qmv.coloring/1\",\"n\":2,\"g\":1,\"q\":1,\"seed\":null,"
      "\"classes\":[1,1,1,1]}";
  qmv_coloring* c = nullptr;
  REQUIRE(qmv_coloring_from_json(text, &c) == QMV_OK);
  int ok = -1;
  Str verdict;
  REQUIRE(qmv_verify_coloring(c, 1, 0, &ok, &verdict.p) == QMV_OK);
  CHECK(ok == 0);
  json j = verdict.parse();
  CHECK(j["per_class"][0]["witness"]["u"] == "0x0");
  CHECK(j["per_class"][0]["witness"]["v"] == "0x3");
  qmv_coloring_free(c);
}

TEST_CASE("lll report and layer coloring records") {
  Str rec;
  REQUIRE(qmv_lll_report(14, 7, 3, &rec.p) == QMV_OK);
  json j = rec.parse();
  CHECK(j["p_log2"] == -19);
  CHECK(j["d"] == 24500);
  CHECK(j["satisfied"] == true);

  Str wide;
  REQUIRE(qmv_lll_report(20, 10, 3, &wide.p) == QMV_OK);
  CHECK(wide.parse()["satisfied"] == false);

  Str bad;
  CHECK(qmv_lll_report(14, 1, 3, &bad.p) == QMV_ERR_ARG);

  Str layer;
  REQUIRE(qmv_layer_coloring(6, 2, 3, 1, 0, 0, &layer.p) == QMV_OK);
  json jl = layer.parse();
  CHECK(jl["schema"] == "qmv.layer_coloring/1");
  for (const auto& c : jl["colors"]) CHECK(c == 1);  // boundary layer
}

TEST_CASE("exact solvers through the C surface") {
  Str mu;
  REQUIRE(qmv_exact_mu(2, 0, &mu.p) == QMV_OK);
  CHECK(mu.parse()["mu"] == 3);
  CHECK(mu.parse()["certified"] == true);

  Str chi;
  REQUIRE(qmv_exact_chi(2, 0, &chi.p) == QMV_OK);
  CHECK(chi.parse()["chi"] == 2);

  Str blocked;
  CHECK(qmv_exact_mu(9, 0, &blocked.p) == QMV_ERR_BUDGET);
  CHECK(qmv_exact_chi(5, 0, &blocked.p) == QMV_ERR_BUDGET);
}

TEST_CASE("set file reading") {
  const char* path = "/tmp/qmv-capi-set.txt";
  std::FILE* f = std::fopen(path, "wb");
  REQUIRE(f);
  std::fputs("# demo\n0x3\n{1,3}\n", f);
  std::fclose(f);

  Words set;
  uint32_t n = 0;
  REQUIRE(qmv_read_set_file(path, 0, &n, &set.p, &set.count) == QMV_OK);
  CHECK(n == 3);
  CHECK(set.count == 2);
  CHECK(set.p[0] == 0x3);
  CHECK(set.p[1] == 0x5);
  std::remove(path);

  Words missing;
  CHECK(qmv_read_set_file("/tmp/qmv-no-such-file", 0, &n, &missing.p, &missing.count) ==
        QMV_ERR_IO);
}

TEST_CASE("null arguments are rejected, not crashed on") {
  CHECK(qmv_distance(3, 0x1, 0x2, nullptr) == QMV_ERR_ARG);
  CHECK(qmv_check_set(2, nullptr, 4, 1, 0, nullptr, nullptr) == QMV_ERR_ARG);
  CHECK(qmv_coloring_to_json(nullptr, nullptr) == QMV_ERR_ARG);
  qmv_coloring* c = nullptr;
  CHECK(qmv_coloring_from_json("not json", &c) == QMV_ERR_IO);
  CHECK(qmv_coloring_read_file("/tmp/qmv-no-such-file", &c) == QMV_ERR_IO);
}
