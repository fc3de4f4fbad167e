#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "pwlmode.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  pwlmode_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("version and error strings") {
  CHECK(std::string(pwlmode_version()).find("pwlmode") == 0);
  CHECK(pwlmode_last_error() != nullptr);
}

TEST_CASE("map creation, evaluation and JSON round trip") {
  const double params[2] = {-0.444, -0.6};
  pwlmode_map* map = nullptr;
  REQUIRE(pwlmode_map_family("pws2d", params, 2, &map) == PWLMODE_OK);
  CHECK(pwlmode_map_dim(map) == 2);

  double x[2] = {1.0, 0.0};
  double y[2];
  REQUIRE(pwlmode_map_eval(map, x, y) == PWLMODE_OK);
  CHECK(y[0] == doctest::Approx(0.556));
  CHECK(y[1] == doctest::Approx(-1.1));

  char* text = nullptr;
  REQUIRE(pwlmode_map_to_json(map, &text) == PWLMODE_OK);
  std::string json_text = take(text);

  pwlmode_map* back = nullptr;
  REQUIRE(pwlmode_map_from_json(json_text.c_str(), &back) == PWLMODE_OK);
  char* text2 = nullptr;
  REQUIRE(pwlmode_map_to_json(back, &text2) == PWLMODE_OK);
  CHECK(take(text2) == json_text);  // bit-identical round trip

  int homeo = 0;
  REQUIRE(pwlmode_map_is_homeomorphism(map, &homeo) == PWLMODE_OK);
  CHECK(homeo == 1);

  pwlmode_map_free(map);
  pwlmode_map_free(back);
}

TEST_CASE("invalid map documents are domain errors") {
  pwlmode_map* map = nullptr;
  CHECK(pwlmode_map_from_json("{\"n\":2}", &map) == PWLMODE_ERR_DOMAIN);
  CHECK(pwlmode_map_from_json("not json", &map) == PWLMODE_ERR_DOMAIN);
  // unknown keys rejected
  CHECK(pwlmode_map_from_json(
            "{\"n\":1,\"A_L\":[[0.5]],\"A_R\":[[0.5]],\"b\":[1],\"extra\":1}", &map) ==
        PWLMODE_ERR_DOMAIN);
  // shared-column violation
  CHECK(pwlmode_map_from_json(
            "{\"n\":2,\"A_L\":[[0,1],[0,0]],\"A_R\":[[0,2],[0,0]],\"b\":[1,0]}", &map) ==
        PWLMODE_ERR_DOMAIN);
  CHECK(std::string(pwlmode_last_error()).size() > 0);
}

TEST_CASE("word helpers and the error mapping") {
  int d = 0;
  REQUIRE(pwlmode_mult_inverse(2, 7, &d) == PWLMODE_OK);
  CHECK(d == 4);
  CHECK(pwlmode_mult_inverse(4, 10, &d) == PWLMODE_ERR_DOMAIN);
  CHECK(std::string(pwlmode_last_error()).find("NotCoprime") != std::string::npos);

  char* word = nullptr;
  REQUIRE(pwlmode_word_rotational(2, 2, 7, &word) == PWLMODE_OK);
  CHECK(take(word) == "LRRRLRR");

  char* cls = nullptr;
  REQUIRE(pwlmode_word_classify("LRRRLRR", &cls) == PWLMODE_OK);
  json j = json::parse(take(cls));
  CHECK(j["rotational"].get<bool>());
  CHECK(j["ell"].get<int>() == 2);
  CHECK(j["m"].get<int>() == 2);
  CHECK(j["p"].get<int>() == 7);

  REQUIRE(pwlmode_word_classify("LLRRRRLRR", &cls) == PWLMODE_OK);
  j = json::parse(take(cls));
  CHECK_FALSE(j["rotational"].get<bool>());
}

TEST_CASE("cycle solve over the C surface") {
  const double params[2] = {-0.444, -0.6};
  pwlmode_map* map = nullptr;
  REQUIRE(pwlmode_map_family("pws2d", params, 2, &map) == PWLMODE_OK);

  char* out = nullptr;
  REQUIRE(pwlmode_cycle_solve(map, "F[2,2,7]", &out) == PWLMODE_OK);
  json j = json::parse(take(out));
  CHECK(j["word"] == "LRRRLRR");
  CHECK(j["admissibility"] == "admissible");
  CHECK(j["stable"].get<bool>());
  CHECK(j["points"].size() == 7);
  const double direct = j["points"][0][0].get<double>();
  const double via_adj = j["first_component_adjugate"].get<double>();
  CHECK(std::fabs(direct - via_adj) < 1e-9);

  double x1 = 0;
  REQUIRE(pwlmode_cycle_first_component(map, "R", &x1) == PWLMODE_OK);
  CHECK(x1 == doctest::Approx(1.0 / 2.544).epsilon(1e-12));
  pwlmode_map_free(map);
}

TEST_CASE("singular word matrices map to a domain error with NoUniqueCycle") {
  pwlmode_map* map = nullptr;
  REQUIRE(pwlmode_map_from_json(
              "{\"n\":2,\"A_L\":[[1,0],[0,1]],\"A_R\":[[1,0],[0,1]],\"b\":[1,1]}", &map) ==
          PWLMODE_OK);
  char* out = nullptr;
  CHECK(pwlmode_cycle_solve(map, "LR", &out) == PWLMODE_ERR_DOMAIN);
  CHECK(std::string(pwlmode_last_error()).find("NoUniqueCycle") != std::string::npos);
  pwlmode_map_free(map);
}

TEST_CASE("fixed points JSON") {
  const double params[2] = {-0.444, -0.6};
  pwlmode_map* map = nullptr;
  REQUIRE(pwlmode_map_family("pws2d", params, 2, &map) == PWLMODE_OK);
  char* out = nullptr;
  REQUIRE(pwlmode_map_fixed_points(map, &out) == PWLMODE_OK);
  json j = json::parse(take(out));
  CHECK(j["L"]["admissibility"] == "virtual");
  CHECK(j["R"]["admissibility"] == "admissible");
  CHECK(j["rho_b"].get<double>() == doctest::Approx(1.0));
  pwlmode_map_free(map);
}

TEST_CASE("circle analysis over the C surface") {
  const double params[2] = {-0.444, -0.6};
  pwlmode_map* map = nullptr;
  REQUIRE(pwlmode_map_family("pws2d", params, 2, &map) == PWLMODE_OK);
  char* out = nullptr;
  REQUIRE(pwlmode_circle_analyze(map, nullptr, &out) == PWLMODE_OK);
  json j = json::parse(take(out));
  CHECK(j["degree"].get<int>() == 1);
  CHECK(j["period"].get<int>() == 7);
  CHECK(j["rotation"]["num"].get<int>() == 2);
  CHECK(j["rotation"]["den"].get<int>() == 7);
  CHECK(j["itinerary_rotational"]["ell"].get<int>() == 2);
  CHECK(j["ordering"]["holds"].get<bool>());
  CHECK(j["ordering"]["d"].get<int>() == 4);

  CHECK(pwlmode_circle_analyze(map, "{\"bogus\": 1}", &out) == PWLMODE_ERR_DOMAIN);
  pwlmode_map_free(map);
}

TEST_CASE("scan over the C surface writes deterministic CSV") {
  json spec = {
      {"family", "pws2d"},
      {"axes", json::array({{{"param", "alpha"}, {"min", -0.5}, {"max", -0.4}, {"count", 6}},
                            {{"param", "beta"}, {"min", -0.65}, {"max", -0.55}, {"count", 6}}})},
      {"p_max", 8}};
  const std::string csv1 = "/tmp/pwlmode_capi_scan1.csv";
  const std::string csv2 = "/tmp/pwlmode_capi_scan2.csv";
  char* out = nullptr;
  REQUIRE(pwlmode_scan_run(spec.dump().c_str(), csv1.c_str(), nullptr, 1, &out) == PWLMODE_OK);
  json summary = json::parse(take(out));
  CHECK(summary["cells"]["total"].get<int>() == 36);
  REQUIRE(pwlmode_scan_run(spec.dump().c_str(), csv2.c_str(), nullptr, 3, &out) == PWLMODE_OK);
  take(out);
  CHECK(slurp(csv1) == slurp(csv2));
  CHECK(slurp(csv1).find("alpha,beta,verdict,m,p,ell,max_modulus\n") == 0);
  std::remove(csv1.c_str());
  std::remove(csv2.c_str());

  // zero-area trivial window: 2x2 grid still yields 4 rows
  json tiny = {
      {"family", "pws2d"},
      {"axes", json::array({{{"param", "alpha"}, {"min", -0.45}, {"max", -0.44}, {"count", 2}},
                            {{"param", "beta"}, {"min", -0.61}, {"max", -0.6}, {"count", 2}}})},
      {"p_max", 4}};
  REQUIRE(pwlmode_scan_run(tiny.dump().c_str(), nullptr, nullptr, 1, &out) == PWLMODE_OK);
  summary = json::parse(take(out));
  CHECK(summary["cells"]["total"].get<int>() == 4);

  // unknown keys in the spec are rejected
  json bad = spec;
  bad["bogus"] = 1;
  CHECK(pwlmode_scan_run(bad.dump().c_str(), nullptr, nullptr, 1, &out) == PWLMODE_ERR_DOMAIN);
}

TEST_CASE("bcb run over the C surface") {
  json fam = {{"family", "pws2d"}, {"params", {{"alpha", -0.444}}}, {"vary", "beta"}};
  char* out = nullptr;
  REQUIRE(pwlmode_bcb_run(fam.dump().c_str(), "F[2,2,7]", -1, -0.68, -0.45, &out) ==
          PWLMODE_OK);
  json ev = json::parse(take(out));
  CHECK(ev["classification"] == "nonsmooth_fold");
  CHECK(ev["audit"]["status"] == "pass");

  // the synthetic interp family with an exact root at eta = 1/2
  json interp = {{"family", "interp"},
                 {"map0",
                  {{"n", 2},
                   {"A_L", json::array({{0.5, 0.0}, {0.0, 0.5}})},
                   {"A_R", json::array({{0.5, 0.0}, {0.0, 0.5}})},
                   {"b", json::array({-1.0, 0.0})}}},
                 {"map1",
                  {{"n", 2},
                   {"A_L", json::array({{0.5, 0.0}, {0.0, 0.5}})},
                   {"A_R", json::array({{0.5, 0.0}, {0.0, 0.5}})},
                   {"b", json::array({1.0, 0.0})}}}};
  REQUIRE(pwlmode_bcb_run(interp.dump().c_str(), "R", 0, 0.2, 0.9, &out) == PWLMODE_OK);
  ev = json::parse(take(out));
  CHECK(ev["eta_star"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));

  // malformed bracket: no sign change
  CHECK(pwlmode_bcb_run(interp.dump().c_str(), "R", 0, 0.6, 0.9, &out) == PWLMODE_ERR_DOMAIN);
  CHECK(std::string(pwlmode_last_error()).find("NoSignChange") != std::string::npos);
}

TEST_CASE("audit campaign over the C surface") {
  char* out = nullptr;
  REQUIRE(pwlmode_audit_run(25, 42, &out) == PWLMODE_OK);
  json j = json::parse(take(out));
  CHECK(j["events"].get<int>() == 25);
  CHECK(j["theorem_violations"].get<int>() == 0);
  CHECK(j["persistence"].get<int>() == 0);
}

TEST_CASE("option knobs") {
  CHECK(pwlmode_set_option("eps_sign", 1e-9) == PWLMODE_OK);
  CHECK(pwlmode_set_option("bogus", 1.0) == PWLMODE_ERR_DOMAIN);
  CHECK(pwlmode_set_option("eps_sign", -1.0) == PWLMODE_ERR_DOMAIN);
}
