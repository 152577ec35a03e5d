#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "aqg/aqg.hpp"
#include "aqg/instances.hpp"

using namespace aqg;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = std::string("/tmp/aqg_test_") + name;
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("export then load reproduces structure constants") {
  for (std::string nm : {"sweedler", "fun:Z3", "grp:Z2xZ2", "taft:3", "trivial"}) {
    auto H = resolve_instance(nm);
    auto j = export_instance(H, 3);
    LoadResult res = load_custom_json(j, 3);
    INFO(nm << ": " << (res.errors.empty() ? "" : res.errors.front()));
    REQUIRE(res.ok);
    std::string why;
    bool eq = roundtrip_equal(H, *res.data, 3, &why);
    INFO(why);
    CHECK(eq);
  }
}

TEST_CASE("export of a dual loads and passes") {
  auto H = resolve_instance("fun:Z3");
  HopfMaps hm = hopf_maps(H, 3);
  ModularData M = compute_modular(H, hm, 3);
  QuantumGroupData D = build_dual(H, hm, M);
  auto j = export_instance(D, 3);
  LoadResult res = load_custom_json(j, 3);
  INFO((res.errors.empty() ? "" : res.errors.front()));
  REQUIRE(res.ok);
  CHECK(res.report.all_pass());
}

TEST_CASE("hand-written file encoding fun:Z2 loads and matches the catalog twin") {
  // pointwise product on {e, a}, D(f)(r,s) = f(rs)
  std::string text = R"JSON({
    "field": {"conductor": 1},
    "basis": ["e", "a"],
    "unit": [[0, "1"], [1, "1"]],
    "mu": [[0, 0, [[0, "1"]]], [1, 1, [[1, "1"]]]],
    "galois": {
      "gamma_l": [[0, 0, [[0, 0, "1"]]], [0, 1, [[1, 1, "1"]]],
                   [1, 0, [[0, 1, "1"]]], [1, 1, [[1, 0, "1"]]]],
      "gamma_r": [[0, 0, [[0, 0, "1"]]], [0, 1, [[1, 1, "1"]]],
                   [1, 0, [[1, 0, "1"]]], [1, 1, [[0, 1, "1"]]]],
      "rho_l":   [[0, 0, [[0, 0, "1"]]], [0, 1, [[0, 1, "1"]]],
                   [1, 0, [[1, 1, "1"]]], [1, 1, [[1, 0, "1"]]]],
      "rho_r":   [[0, 0, [[0, 0, "1"]]], [0, 1, [[1, 0, "1"]]],
                   [1, 0, [[1, 1, "1"]]], [1, 1, [[0, 1, "1"]]]]
    },
    "phi": [[0, "1"], [1, "1"]]
  })JSON";
  auto path = write_temp("funz2.qg", text);
  LoadResult res = load_custom_file(path, 3);
  INFO((res.errors.empty() ? "" : res.errors.front()));
  REQUIRE(res.ok);
  auto twin = resolve_instance("fun:Z2");
  std::string why;
  // the label sets differ ("e","a" vs "0","1") but indices coincide
  CHECK(roundtrip_equal(twin, *res.data, 3, &why));
  INFO(why);
}

TEST_CASE("a gamma_r violating the reconstruction conditions is rejected by name") {
  auto H = resolve_instance("fun:Z2");
  auto j = export_instance(H, 3);
  // swap the legs of gamma_r (tau gamma_r): mu stays associative but the
  // comultiplication reconstruction fails
  for (auto& row : j["galois"]["gamma_r"])
    for (auto& term : row[2]) std::swap(term[0], term[1]);
  j["galois"].erase("gamma_r_inv");
  LoadResult res = load_custom_json(j, 3);
  CHECK_FALSE(res.ok);
  bool named = false;
  for (const auto& c : res.report.checks)
    if (!c.pass && c.id.rfind("prop7.", 0) == 0 && !c.counterexample.empty()) named = true;
  CHECK(named);
}

TEST_CASE("empty basis is rejected") {
  nlohmann::json j = {{"field", {{"conductor", 1}}},
                      {"basis", nlohmann::json::array()},
                      {"mu", nlohmann::json::array()},
                      {"galois", nlohmann::json::object()},
                      {"phi", nlohmann::json::array()}};
  LoadResult res = load_custom_json(j, 3);
  CHECK_FALSE(res.ok);
  REQUIRE_FALSE(res.errors.empty());
  CHECK(res.errors.front().find("empty basis") != std::string::npos);
}

TEST_CASE("parse errors carry diagnostics") {
  SECTION("malformed json reports the line") {
    auto path = write_temp("broken.json", "{\n  \"field\": {\n  ,\n}\n");
    LoadResult res = load_custom_file(path, 3);
    CHECK_FALSE(res.ok);
    REQUIRE_FALSE(res.errors.empty());
    CHECK(res.errors.front().find("line") != std::string::npos);
  }
  SECTION("out-of-range index names the field") {
    auto H = resolve_instance("fun:Z2");
    auto j = export_instance(H, 3);
    j["mu"].push_back(nlohmann::json::array(
        {7, 0, nlohmann::json::array({nlohmann::json::array({0, "1"})})}));
    LoadResult res = load_custom_json(j, 3);
    CHECK_FALSE(res.ok);
    REQUIRE_FALSE(res.errors.empty());
    CHECK(res.errors.front().find("mu") != std::string::npos);
    CHECK(res.errors.front().find("outside basis") != std::string::npos);
  }
  SECTION("bad scalar literal names the field") {
    auto H = resolve_instance("fun:Z2");
    auto j = export_instance(H, 3);
    j["phi"][0][1] = "7/0x";
    LoadResult res = load_custom_json(j, 3);
    CHECK_FALSE(res.ok);
    REQUIRE_FALSE(res.errors.empty());
    CHECK(res.errors.front().find("phi") != std::string::npos);
  }
  SECTION("missing galois map is reported") {
    auto H = resolve_instance("fun:Z2");
    auto j = export_instance(H, 3);
    j["galois"].erase("rho_r");
    j["galois"].erase("rho_r_inv");
    LoadResult res = load_custom_json(j, 3);
    CHECK_FALSE(res.ok);
    REQUIRE_FALSE(res.errors.empty());
    CHECK(res.errors.front().find("rho_r") != std::string::npos);
  }
}

TEST_CASE("window export of an infinite instance is flagged partial") {
  auto H = resolve_instance("fun:Z");
  auto j = export_instance(H, 2);
  CHECK(j.value("partial", false));
  CHECK(j["basis"].size() == 5);
  // loading a partial dump fails its law check (Galois maps truncated)
  LoadResult res = load_custom_json(j, 3);
  CHECK_FALSE(res.ok);
}

TEST_CASE("inverses in the file are used instead of re-solving") {
  auto H = resolve_instance("sweedler");
  auto j = export_instance(H, 3);
  REQUIRE(j["galois"].contains("gamma_r_inv"));
  LoadResult res = load_custom_json(j, 3);
  REQUIRE(res.ok);
  // and a file without them still loads via invert_on_span
  j["galois"].erase("gamma_l_inv");
  j["galois"].erase("gamma_r_inv");
  j["galois"].erase("rho_l_inv");
  j["galois"].erase("rho_r_inv");
  LoadResult res2 = load_custom_json(j, 3);
  REQUIRE(res2.ok);
  std::string why;
  CHECK(structure_equal(*res.data, *res2.data, 3, &why));
  INFO(why);
}
