// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <initializer_list>
#include <cstring>
#include <sstream>

#include "fracalc/grid.hpp"
#include "fracalc/models.hpp"

using namespace fracalc;
namespace grid = fracalc::grid;

namespace {

grid::PointFn plate_fn() {
  return [](double x, double t) {
    return models::vibrating_plate(FractionalOrder(0.8), x, t);
  };
}

}  // namespace

TEST_CASE("parallel grid evaluation is bit-identical to the serial reference") {
  const grid::GridSpec spec{0.0, 3.0, 37, 0.0, 2.0, 29};
  const auto a = grid::evaluate(plate_fn(), spec, grid::ExecMode::serial);
  const auto b = grid::evaluate(plate_fn(), spec, grid::ExecMode::parallel);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    CHECK(std::memcmp(&a.values[i], &b.values[i], sizeof(double)) == 0);
    CHECK(a.converged[i] == b.converged[i]);
  }
}

TEST_CASE("csv output is deterministic and carries the convergence column") {
  const grid::GridSpec spec{0.5, 1.5, 3, 0.0, 1.0, 2};
  const auto f = grid::evaluate(plate_fn(), spec, grid::ExecMode::parallel, "plate",
                                {{"nu", "0.8"}});
  std::ostringstream a, b;
  grid::write_csv(a, f);
  grid::write_csv(b, f);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("x,t,value,converged\n", 0) == 0);
  // 6 rows + header, every row ends with a flag
  int lines = 0;
  for (char c : a.str())
    if (c == '\n') ++lines;
  CHECK(lines == 7);
}

TEST_CASE("17-significant-digit formatting round-trips doubles") {
  for (double v : {2.718281828459045, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0}) {
    const std::string s = grid::format17(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("json output parses and matches the field") {
  const grid::GridSpec spec{0.0, 2.0, 4, 0.5, 0.5, 1};
  const auto f = grid::evaluate(plate_fn(), spec, grid::ExecMode::parallel, "plate",
                                {{"nu", "0.8"}});
  std::ostringstream os;
  grid::write_json(os, f);
  const auto doc = nlohmann::json::parse(os.str());
  CHECK(doc["model"] == "plate");
  CHECK(doc["params"]["nu"] == "0.8");
  CHECK(doc["grid"]["x_count"] == 4);
  REQUIRE(doc["rows"].size() == 4);
  CHECK(doc["rows"][1][0].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(doc["rows"][1][2].get<double>() ==
        doctest::Approx(f.values[1 * 1 + 0]).epsilon(1e-15));
  CHECK(doc["rows"][0][3].is_boolean());
}

TEST_CASE("grid spec validation and degenerate axes") {
  grid::GridSpec bad{1.0, 0.0, 2, 0.0, 1.0, 2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  const grid::GridSpec one{1.5, 1.5, 1, 0.0, 0.0, 1};
  CHECK(one.x(0) == 1.5);
  CHECK(one.t(0) == 0.0);
}
