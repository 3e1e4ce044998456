#include <string>

#include "cascadelab/io.hpp"
#include "cascadelab/lattice.hpp"
#include "doctest.h"

using namespace casclab;

TEST_CASE("csv escaping follows RFC 4180") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("csv document carries the schema line and rejects ragged rows") {
  const std::string doc = csv_document({"t", "value"}, {{"0", "1.5"}});
  CHECK(doc == "# schema cascade-lab/1\nt,value\n0,1.5\n");
  CHECK_THROWS_AS(csv_document({"a", "b"}, {{"only-one"}}),
                  PreconditionViolation);
}

TEST_CASE("state json round trip with stable key order") {
  GalerkinState s = make_state({{1, 0}, {0, 2}});
  s.amplitudes = {cplx{0.5, -0.25}, cplx{1.0, 3.0}};
  s.time = 2.5;
  Json j = state_to_json(s);
  const std::string text = json_document(j);
  CHECK(text.find("\"schema\": \"cascade-lab/1\"") != std::string::npos);
  // Insertion order is preserved: schema before time before modes.
  CHECK(text.find("schema") < text.find("time"));
  CHECK(text.find("time") < text.find("modes"));
  GalerkinState back = state_from_json(Json::parse(text));
  CHECK(back.time == s.time);
  REQUIRE(back.support == s.support);
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
    CHECK(back.amplitudes[i] == s.amplitudes[i]);
}

TEST_CASE("lambda json round trip preserves structure and verdict") {
  LambdaSet L = build_lambda(3, 4, 10000, 11);
  Json j = lambda_to_json(L);
  LambdaSet back = lambda_from_json(j);
  CHECK(back.points == L.points);
  CHECK(back.generations == L.generations);
  REQUIRE(back.families.size() == L.families.size());
  for (std::size_t f = 0; f < L.families.size(); ++f) {
    CHECK(back.families[f].n == L.families[f].n);
    CHECK(back.families[f].generation == L.families[f].generation);
  }
  CHECK(verify_lambda(back).all());
  // Serialization is deterministic byte for byte.
  CHECK(json_document(lambda_to_json(back)) == json_document(j));
}

TEST_CASE("verdict json reports conditions and witnesses") {
  LambdaSet L;
  L.points = {{0, 0}, {2, 2}, {2, 0}};
  L.links.assign(3, {});
  L.generations = {{0, 1}, {2}};
  Json j = verdict_to_json(verify_lambda(L));
  CHECK(j["schema"] == kSchemaVersion);
  CHECK(j["closure"] == false);
  CHECK(j["all"] == false);
  CHECK(!j["witnesses"]["closure"].empty());
}

TEST_CASE("config parser: sections, comments, errors") {
  Config cfg = parse_config(
      "top = 1\n"
      "[toy]\n"
      "# comment line\n"
      "delta = 1e-3   # trailing comment\n"
      "sigma = 0.15\n"
      "[lambda]\n"
      "radius = 10000\n");
  CHECK(cfg[""]["top"] == "1");
  CHECK(cfg["toy"]["delta"] == "1e-3");
  CHECK(cfg["toy"]["sigma"] == "0.15");
  CHECK(cfg["lambda"]["radius"] == "10000");
  CHECK_THROWS_AS(parse_config("[broken\n"), PreconditionViolation);
  CHECK_THROWS_AS(parse_config("no equals here\n"), PreconditionViolation);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), PreconditionViolation);
}
