// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0
//
// Wall-clock comparison of the serial reference and the OpenMP grid path.
// The two must agree bit for bit; the table prints the speedup per kernel.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstring>

#include "fracalc/grid.hpp"
#include "fracalc/models.hpp"
#include "fracalc/specfun.hpp"
#include "fracalc/subordination.hpp"

using fracalc::FractionalOrder;
using fracalc::SeriesPolicy;
using fracalc::SeriesResult;
namespace grid = fracalc::grid;

namespace {

struct Kernel {
  const char* name;
  grid::PointFn fn;
  grid::GridSpec spec;
};

void run(const Kernel& k) {
  const double t0 = omp_get_wtime();
  const grid::GridField serial = grid::evaluate(k.fn, k.spec, grid::ExecMode::serial);
  const double t1 = omp_get_wtime();
  const grid::GridField parallel = grid::evaluate(k.fn, k.spec, grid::ExecMode::parallel);
  const double t2 = omp_get_wtime();

  long mismatches = 0;
  for (std::size_t i = 0; i < serial.values.size(); ++i) {
    if (std::memcmp(&serial.values[i], &parallel.values[i], sizeof(double)) != 0) ++mismatches;
    if (serial.converged[i] != parallel.converged[i]) ++mismatches;
  }
  const double ts = t1 - t0, tp = t2 - t1;
  std::printf("%-22s %8ld pts   serial %8.3f s   openmp %8.3f s   speedup %5.2fx   mismatches %ld\n",
              k.name, static_cast<long>(serial.values.size()), ts, tp,
              tp > 0.0 ? ts / tp : 0.0, mismatches);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const long n = quick ? 40 : 220;
  const long n_ml = quick ? 1600 : 10000;
  SeriesPolicy policy;

  std::printf("threads: %d\n", omp_get_max_threads());

  Kernel ml{"mittag_leffler grid",
            [&policy](double x, double) {
              return fracalc::specfun::mittag_leffler({0.6, 1.0}, x, policy);
            },
            {-8.0, 8.0, n_ml, 0.0, 0.0, 1}};
  run(ml);

  const fracalc::models::HeatPolyParams hp{4.0, FractionalOrder(0.5)};
  Kernel heat{"heat_polynomial grid",
              [&](double x, double t) { return fracalc::models::heat_polynomial(hp, x, t, policy); },
              {0.5, 2.0, n, 0.0, 1.0, n}};
  run(heat);

  const fracalc::models::FppParams fp{1.0, FractionalOrder(0.6)};
  Kernel pmf{"fpp_pmf column",
             [&](double k, double t) {
               return fracalc::models::fpp_pmf(fp, static_cast<long>(k), t, policy).raw;
             },
             {0.0, 30.0, 31, 0.25, 4.0, quick ? 2 : 24}};
  run(pmf);

  Kernel plate{"vibrating_plate grid",
               [&policy](double x, double t) {
                 return fracalc::models::vibrating_plate(FractionalOrder(0.8), x, t, policy);
               },
               {0.0, 3.141592653589793, n, 0.0, 2.0, n}};
  run(plate);

  return 0;
}
