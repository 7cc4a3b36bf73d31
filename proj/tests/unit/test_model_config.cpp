#include "doctest.h"

#include <stdexcept>

#include "dochar/model_config.hpp"

using namespace dochar;

TEST_CASE("parse and round trip") {
  const auto c = parse_model_config(
      R"({"k": 2, "a0": 3, "coeff_kind": "polynomial", "coeffs": [0, 0, 1],
          "delta0": 0.4, "probe_B": 1.5})");
  CHECK(c.k == 2);
  CHECK(c.a0 == 3.0);
  CHECK(c.coefficient().kind() == CoefficientKind::Polynomial);
  CHECK(c.cutoff().delta0 == 0.4);
  REQUIRE(c.probe_B.has_value());
  CHECK(*c.probe_B == 1.5);
  const auto d = parse_model_config(model_config_to_json(c));
  CHECK(model_config_to_json(d) == model_config_to_json(c));
}

TEST_CASE("defaults") {
  const auto c = parse_model_config("{}");
  CHECK(c.k == 1);
  CHECK(c.coefficient().kind() == CoefficientKind::Constant);
  CHECK(c.regions().nested(1));
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(parse_model_config("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model_config("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model_config(R"({"kk": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model_config(R"({"k": 0})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model_config(R"({"k": "two"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model_config(R"({"coeff_kind": "spline"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model_config(R"({"gamma1": 5})"), std::invalid_argument);
  CHECK_THROWS_AS(load_model_config("/nonexistent/dochar.json"), std::invalid_argument);
}
