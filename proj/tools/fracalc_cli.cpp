// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: evaluates the special functions, fractional
// operators and example models on rectangular grids and writes CSV or JSON
// suitable for plotting and reproduction scripts.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fracalc/fracops.hpp"
#include "fracalc/grid.hpp"
#include "fracalc/models.hpp"
#include "fracalc/opsolve.hpp"
#include "fracalc/specfun.hpp"
#include "fracalc/subordination.hpp"

namespace {

using fracalc::FractionalOrder;
using fracalc::SeriesPolicy;
using fracalc::SeriesResult;
namespace grid = fracalc::grid;

struct Axis {
  double lo = 0.0, hi = 0.0;
  long count = 1;
};

Axis parse_axis(const std::string& text) {
  // "x0:x1:n" or a single value
  Axis a;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    a.lo = a.hi = std::stod(text);
    a.count = 1;
    return a;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw CLI::ValidationError("grid", "expected x0:x1:n");
  a.lo = std::stod(text.substr(0, c1));
  a.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  a.count = std::stol(text.substr(c2 + 1));
  if (a.count < 1) throw CLI::ValidationError("grid", "count must be >= 1");
  return a;
}

struct Output {
  std::string format = "csv";
  std::string path;

  void emit(const grid::GridField& field, const std::string& x_name) const {
    std::ostringstream body;
    if (format == "json")
      grid::write_json(body, field, x_name);
    else
      grid::write_csv(body, field, x_name);
    if (path.empty()) {
      std::cout << body.str();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path: " + path);
    out << body.str();
    if (!out.good()) throw std::invalid_argument("write failed: " + path);
  }
};

std::vector<std::string> splice_args_file(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--args-file") continue;
    if (i + 1 >= args.size()) throw std::invalid_argument("--args-file needs a path");
    std::ifstream in(args[i + 1]);
    if (!in) throw std::invalid_argument("cannot read args file: " + args[i + 1]);
    std::vector<std::string> extra;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) extra.push_back(tok);
    }
    args.erase(args.begin() + i, args.begin() + i + 2);
    args.insert(args.begin() + i, extra.begin(), extra.end());
    --i;
  }
  return args;
}

std::string f17(double v) { return grid::format17(v); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracalc: fractional-calculus special functions, operators and models"};
  app.require_subcommand(1);
  app.fallthrough();  // --format/--out/--rel-tol/--max-terms valid after the subcommand

  Output out;
  SeriesPolicy policy;
  app.add_option("--format", out.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out.path, "output path (default stdout)");
  app.add_option("--rel-tol", policy.rel_tol, "series relative tolerance");
  app.add_option("--max-terms", policy.max_terms, "series term budget");

  // shared option storage; each subcommand registers what it needs
  double nu = 0.5, gamma = 1.0, zeta = 1.0, beta = 2.0, rate = 1.0, alpha = 1.0, u = 0.5,
         exponent = 1.0, scale = -1.0;
  long kmax = 10;
  std::string xspec, tspec, opname = "dxx", icname = "monomial";
  bool bvp = false;

  auto add_axis_x = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--x", xspec, what);
    cmd->add_option("--grid", xspec, "x-axis grid x0:x1:n")->excludes("--x");
  };
  auto add_axis_t = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--t", tspec, what);
    cmd->add_option("--tgrid", tspec, "t-axis grid t0:t1:n")->excludes("--t");
  };

  CLI::App* ml = app.add_subcommand("ml", "generalised Mittag-Leffler E_{gamma,zeta}(x)");
  ml->add_option("--gamma", gamma)->required();
  ml->add_option("--zeta", zeta);
  add_axis_x(ml, "argument x");

  CLI::App* wr = app.add_subcommand("wright", "Wright function phi(gamma, zeta; x)");
  wr->add_option("--gamma", gamma)->required();
  wr->add_option("--zeta", zeta)->required();
  add_axis_x(wr, "argument x");

  CLI::App* tc = app.add_subcommand("tricomi", "zeroth-order Tricomi function C_0(x)");
  add_axis_x(tc, "argument x");

  CLI::App* cp = app.add_subcommand("caputo", "exact Caputo derivative of t^e (power rule)");
  cp->add_option("--nu", nu)->required();
  cp->add_option("--exponent", exponent)->required();
  add_axis_t(cp, "evaluation time t");

  CLI::App* hp = app.add_subcommand("heatpoly", "fractional heat polynomial f(x,t)");
  hp->add_option("--nu", nu)->required();
  hp->add_option("--beta", beta)->required();
  add_axis_x(hp, "space point x");
  add_axis_t(hp, "time t");

  CLI::App* pl = app.add_subcommand("plate", "vibrating plate sin(x) E_nu(-t^nu)");
  pl->add_option("--nu", nu)->required();
  add_axis_x(pl, "space point x");
  add_axis_t(pl, "time t");

  CLI::App* sb = app.add_subcommand("spacebvp", "space-fractional BVP exp(-t) E_nu(-x^nu)");
  sb->add_option("--nu", nu)->required();
  add_axis_x(sb, "space point x");
  add_axis_t(sb, "time t");

  CLI::App* pm = app.add_subcommand("fpp-pmf", "fractional Poisson state probabilities");
  pm->add_option("--nu", nu)->required();
  pm->add_option("--rate", rate)->required();
  pm->add_option("--kmax", kmax);
  add_axis_t(pm, "time t");

  CLI::App* pg = app.add_subcommand("fpp-pgf", "fractional Poisson generating function");
  pg->add_option("--nu", nu)->required();
  pg->add_option("--rate", rate)->required();
  pg->add_option("--u", u, "pgf argument, |u| <= 1")->required();
  add_axis_t(pg, "time t");

  CLI::App* so = app.add_subcommand("subordination", "randomised-time expectation");
  so->add_option("--nu", nu)->required();
  so->add_option("--alpha", alpha)->required();
  add_axis_t(so, "time t");

  CLI::App* sv = app.add_subcommand("solve", "operational series solution");
  sv->add_option("--nu", nu)->required();
  sv->add_option("--op", opname, "operator: dxx, neg-dxxxx, scalar")
      ->check(CLI::IsMember({"dxx", "neg-dxxxx", "scalar"}));
  sv->add_option("--scale", scale, "scalar operator coefficient");
  sv->add_option("--ic", icname, "data: monomial, sin, exp-neg, const")
      ->check(CLI::IsMember({"monomial", "sin", "exp-neg", "const"}));
  sv->add_option("--beta", beta, "monomial exponent");
  sv->add_flag("--bvp", bvp, "boundary-value orientation (fractional in x)");
  add_axis_x(sv, "space point x");
  add_axis_t(sv, "time t");

  std::vector<std::string> args;
  try {
    args = splice_args_file(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    std::vector<const char*> cargs;
    cargs.push_back("fracalc");
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Axis xa = xspec.empty() ? Axis{} : parse_axis(xspec);
    const Axis ta = tspec.empty() ? Axis{} : parse_axis(tspec);
    grid::GridSpec gs{xa.lo, xa.hi, xa.count, ta.lo, ta.hi, ta.count};
    grid::PointFn fn;
    std::string name, xcol = "x";
    std::vector<std::pair<std::string, std::string>> meta;

    if (app.got_subcommand(ml)) {
      name = "ml";
      meta = {{"gamma", f17(gamma)}, {"zeta", f17(zeta)}};
      fn = [&](double x, double) {
        return fracalc::specfun::mittag_leffler({gamma, zeta}, x, policy);
      };
    } else if (app.got_subcommand(wr)) {
      name = "wright";
      meta = {{"gamma", f17(gamma)}, {"zeta", f17(zeta)}};
      fn = [&](double x, double) { return fracalc::specfun::wright({gamma, zeta}, x, policy); };
    } else if (app.got_subcommand(tc)) {
      name = "tricomi";
      fn = [&](double x, double) { return fracalc::specfun::tricomi_c0(x, policy); };
    } else if (app.got_subcommand(cp)) {
      name = "caputo";
      meta = {{"nu", f17(nu)}, {"exponent", f17(exponent)}};
      const FractionalOrder order(nu);
      const auto d = fracalc::fracops::caputo_power(order, {1.0, exponent});
      fn = [d](double, double t) {
        SeriesResult r;
        r.value = d.coeff * std::pow(t, d.exponent);
        r.converged = true;
        r.terms_used = 1;
        return r;
      };
    } else if (app.got_subcommand(hp)) {
      name = "heatpoly";
      meta = {{"nu", f17(nu)}, {"beta", f17(beta)}};
      const fracalc::models::HeatPolyParams p{beta, FractionalOrder(nu)};
      fn = [p, &policy](double x, double t) {
        return fracalc::models::heat_polynomial(p, x, t, policy);
      };
    } else if (app.got_subcommand(pl)) {
      name = "plate";
      meta = {{"nu", f17(nu)}};
      const FractionalOrder order(nu);
      fn = [order, &policy](double x, double t) {
        return fracalc::models::vibrating_plate(order, x, t, policy);
      };
    } else if (app.got_subcommand(sb)) {
      name = "spacebvp";
      meta = {{"nu", f17(nu)}};
      const FractionalOrder order(nu);
      fn = [order, &policy](double x, double t) {
        return fracalc::models::space_fractional_bvp(order, x, t, policy);
      };
    } else if (app.got_subcommand(pm)) {
      name = "fpp-pmf";
      xcol = "k";
      meta = {{"nu", f17(nu)}, {"rate", f17(rate)}};
      const fracalc::models::FppParams p{rate, FractionalOrder(nu)};
      gs.x_min = 0.0;
      gs.x_max = static_cast<double>(kmax);
      gs.x_count = kmax + 1;
      fn = [p, &policy](double k, double t) {
        return fracalc::models::fpp_pmf(p, static_cast<long>(k), t, policy).raw;
      };
    } else if (app.got_subcommand(pg)) {
      name = "fpp-pgf";
      meta = {{"nu", f17(nu)}, {"rate", f17(rate)}, {"u", f17(u)}};
      const fracalc::models::FppParams p{rate, FractionalOrder(nu)};
      fn = [p, u, &policy](double, double t) {
        return fracalc::models::fpp_pgf(p, u, t, policy);
      };
    } else if (app.got_subcommand(so)) {
      name = "subordination";
      meta = {{"nu", f17(nu)}, {"alpha", f17(alpha)}};
      const FractionalOrder order(nu);
      fn = [order, alpha, &policy](double, double t) {
        const auto spec = fracalc::subordination::make_spec(alpha, order, t, policy);
        return fracalc::subordination::randomized_exponential(spec, policy);
      };
    } else if (app.got_subcommand(sv)) {
      name = "solve";
      meta = {{"nu", f17(nu)}, {"op", opname}, {"ic", icname}};
      fracalc::opsolve::OperatorDescriptor op = fracalc::opsolve::OperatorDescriptor::dxx();
      if (opname == "neg-dxxxx") op = fracalc::opsolve::OperatorDescriptor::neg_dxxxx();
      if (opname == "scalar") {
        op = fracalc::opsolve::OperatorDescriptor::scalar_op(scale);
        meta.emplace_back("scale", f17(scale));
      }
      fracalc::opsolve::AnalyticFunction ic = fracalc::opsolve::AnalyticFunction::monomial(beta);
      if (icname == "sin") ic = fracalc::opsolve::AnalyticFunction::sine();
      if (icname == "exp-neg") ic = fracalc::opsolve::AnalyticFunction::exp_neg();
      if (icname == "const") ic = fracalc::opsolve::AnalyticFunction::constant(1.0);
      if (icname == "monomial") meta.emplace_back("beta", f17(beta));
      const FractionalOrder order(nu);
      auto sol = bvp ? fracalc::opsolve::solve_bvp(order, op, ic, policy)
                     : fracalc::opsolve::solve_ivp(order, op, ic, policy);
      auto solp = std::make_shared<fracalc::opsolve::OperationalSolution>(std::move(sol));
      fn = [solp, &policy](double x, double t) {
        return fracalc::opsolve::evaluate(*solp, x, t, policy);
      };
    }

    const grid::GridField field =
        grid::evaluate(fn, gs, grid::ExecMode::parallel, name, meta);
    out.emit(field, xcol);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
