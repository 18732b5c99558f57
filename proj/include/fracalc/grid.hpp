// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fracalc/series.hpp"

namespace fracalc::grid {

// Rectangular evaluation lattice; count = 1 degenerates an axis for 1-D
// output (the single coordinate is then the axis minimum).
struct GridSpec {
  double x_min = 0.0, x_max = 0.0;
  long x_count = 1;
  double t_min = 0.0, t_max = 0.0;
  long t_count = 1;

  void validate() const;
  double x(long i) const;
  double t(long j) const;
};

// Sampled field on a GridSpec, row-major with x outer and t inner
// (index = i*t_count + j), plus per-point convergence flags and the model
// metadata that goes into the JSON header.
struct GridField {
  GridSpec spec;
  std::vector<double> values;
  std::vector<std::uint8_t> converged;
  std::string model;
  std::vector<std::pair<std::string, std::string>> params;
};

enum class ExecMode { serial, parallel };

using PointFn = std::function<SeriesResult(double x, double t)>;

// Fills the lattice. Points are independent and written to disjoint slots,
// so the parallel path (OpenMP) produces bit-identical values to the serial
// reference regardless of scheduling; the serial path is kept as the
// comparison baseline.
GridField evaluate(const PointFn& fn, const GridSpec& spec, ExecMode mode,
                   const std::string& model_name = {},
                   std::vector<std::pair<std::string, std::string>> params = {});

// Shortest-of-17-significant-digits decimal rendering used by both writers;
// the fixed format keeps output byte-identical across runs.
std::string format17(double v);

// CSV: header row `x,t,value,converged`, comma separator, '\n' endings.
// x_name substitutes the first column label (e.g. "k" for pmf output).
void write_csv(std::ostream& os, const GridField& field, const std::string& x_name = "x");

// JSON document with the same payload plus the model metadata.
void write_json(std::ostream& os, const GridField& field, const std::string& x_name = "x");

}  // namespace fracalc::grid
