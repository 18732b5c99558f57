// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#include "fracalc/grid.hpp"

#include <cstdio>
#include <stdexcept>

namespace fracalc::grid {

void GridSpec::validate() const {
  if (x_count < 1 || t_count < 1) throw std::invalid_argument("GridSpec: counts must be >= 1");
  if (!(x_max >= x_min) || !(t_max >= t_min))
    throw std::invalid_argument("GridSpec: max must be >= min");
}

double GridSpec::x(long i) const {
  if (x_count == 1) return x_min;
  return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(x_count - 1);
}

double GridSpec::t(long j) const {
  if (t_count == 1) return t_min;
  return t_min + (t_max - t_min) * static_cast<double>(j) / static_cast<double>(t_count - 1);
}

GridField evaluate(const PointFn& fn, const GridSpec& spec, ExecMode mode,
                   const std::string& model_name,
                   std::vector<std::pair<std::string, std::string>> params) {
  spec.validate();
  GridField field;
  field.spec = spec;
  field.model = model_name;
  field.params = std::move(params);
  const long n = spec.x_count * spec.t_count;
  field.values.assign(n, 0.0);
  field.converged.assign(n, 0);

  // errors are collected and rethrown for the lowest failing index, so both
  // execution modes fail identically
  long err_idx = n;
  int err_kind = 0;  // 1 invalid_argument, 2 domain_error, 3 other
  std::string err_msg;

  if (mode == ExecMode::parallel) {
    // dynamic schedule: per-point cost varies by orders of magnitude, and the
    // assignment of points to threads cannot change the values
#pragma omp parallel for schedule(dynamic, 8)
    for (long idx = 0; idx < n; ++idx) {
      try {
        const SeriesResult r = fn(spec.x(idx / spec.t_count), spec.t(idx % spec.t_count));
        field.values[idx] = r.value;
        field.converged[idx] = r.converged ? 1 : 0;
      } catch (const std::exception& e) {
#pragma omp critical
        if (idx < err_idx) {
          err_idx = idx;
          err_msg = e.what();
          err_kind = dynamic_cast<const std::invalid_argument*>(&e)   ? 1
                     : dynamic_cast<const std::domain_error*>(&e) ? 2
                                                                  : 3;
        }
      }
    }
  } else {
    for (long idx = 0; idx < n && err_idx == n; ++idx) {
      try {
        const SeriesResult r = fn(spec.x(idx / spec.t_count), spec.t(idx % spec.t_count));
        field.values[idx] = r.value;
        field.converged[idx] = r.converged ? 1 : 0;
      } catch (const std::exception& e) {
        err_idx = idx;
        err_msg = e.what();
        err_kind = dynamic_cast<const std::invalid_argument*>(&e)   ? 1
                   : dynamic_cast<const std::domain_error*>(&e) ? 2
                                                                : 3;
      }
    }
  }
  if (err_idx < n) {
    if (err_kind == 1) throw std::invalid_argument(err_msg);
    if (err_kind == 2) throw std::domain_error(err_msg);
    throw std::runtime_error(err_msg);
  }
  return field;
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const GridField& field, const std::string& x_name) {
  os << x_name << ",t,value,converged\n";
  for (long i = 0; i < field.spec.x_count; ++i) {
    for (long j = 0; j < field.spec.t_count; ++j) {
      const long idx = i * field.spec.t_count + j;
      os << format17(field.spec.x(i)) << ',' << format17(field.spec.t(j)) << ','
         << format17(field.values[idx]) << ',' << int(field.converged[idx]) << '\n';
    }
  }
}

namespace {

void json_escape(std::ostream& os, const std::string& s) {
  os << '"';
  for (char ch : s) {
    if (ch == '"' || ch == '\\') os << '\\';
    os << ch;
  }
  os << '"';
}

}  // namespace

void write_json(std::ostream& os, const GridField& field, const std::string& x_name) {
  os << "{\n  \"model\": ";
  json_escape(os, field.model);
  os << ",\n  \"params\": {";
  for (std::size_t i = 0; i < field.params.size(); ++i) {
    if (i) os << ", ";
    json_escape(os, field.params[i].first);
    os << ": ";
    json_escape(os, field.params[i].second);
  }
  os << "},\n  \"grid\": {\"x_min\": " << format17(field.spec.x_min)
     << ", \"x_max\": " << format17(field.spec.x_max) << ", \"x_count\": " << field.spec.x_count
     << ", \"t_min\": " << format17(field.spec.t_min)
     << ", \"t_max\": " << format17(field.spec.t_max) << ", \"t_count\": " << field.spec.t_count
     << "},\n  \"columns\": [";
  json_escape(os, x_name);
  os << ", \"t\", \"value\", \"converged\"],\n  \"rows\": [\n";
  for (long i = 0; i < field.spec.x_count; ++i) {
    for (long j = 0; j < field.spec.t_count; ++j) {
      const long idx = i * field.spec.t_count + j;
      os << "    [" << format17(field.spec.x(i)) << ", " << format17(field.spec.t(j)) << ", "
         << format17(field.values[idx]) << ", " << (field.converged[idx] ? "true" : "false")
         << ']';
      if (idx + 1 < field.spec.x_count * field.spec.t_count) os << ',';
      os << '\n';
    }
  }
  os << "  ]\n}\n";
}

}  // namespace fracalc::grid
