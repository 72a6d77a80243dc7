// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/functions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "regvar/errors.hpp"
#include "regvar/rng.hpp"

namespace regvar {

double FunctionSpec::operator()(double x) const {
  if (!fn_) throw EvalError("FunctionSpec: empty function");
  return fn_(x);
}

FunctionSpec FunctionSpec::tabulated(std::string name,
                                     std::vector<std::pair<double, double>> points) {
  if (points.size() < 2)
    throw EvalError("tabulated: need at least 2 points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].first < points[i].first))
      throw EvalError("tabulated: x must be strictly increasing");
  }
  auto pts = std::make_shared<std::vector<std::pair<double, double>>>(std::move(points));
  auto fn = [pts, name](double x) -> double {
    const auto& p = *pts;
    if (x < p.front().first || x > p.back().first) {
      std::ostringstream os;
      os << name << ": x = " << x << " outside tabulated range ["
         << p.front().first << ", " << p.back().first << "]";
      throw EvalError(os.str());
    }
    auto it = std::lower_bound(p.begin(), p.end(), x,
                               [](const auto& a, double v) { return a.first < v; });
    if (it == p.begin()) return it->second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (hi.first == x) return hi.second;
    const double w = (x - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
  };
  return FunctionSpec(std::move(name), std::move(fn));
}

namespace {

[[noreturn]] void bad_spec(const std::string& text, const std::string& why) {
  throw ConfigError("function spec '" + text + "': " + why);
}

struct Call {
  std::string name;
  std::vector<std::string> args;  // raw argument texts (may be nested calls)
};

// Splits "name(a, b(c,d), e)" into name and top-level argument texts.
Call split_call(const std::string& text) {
  Call call;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    call.name = text;
    return call;
  }
  if (text.back() != ')') throw ConfigError("function spec '" + text + "': missing ')'");
  call.name = text.substr(0, open);
  int depth = 0;
  std::string cur;
  for (std::size_t i = open + 1; i + 1 < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      call.args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !call.args.empty()) call.args.push_back(cur);
  return call;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double num_arg(const std::string& text, const std::string& raw) {
  const std::string s = strip(raw);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad_spec(text, "expected a number, got '" + s + "'");
  }
  if (used != s.size()) bad_spec(text, "trailing junk in number '" + s + "'");
  return v;
}

double slowly_varying(const std::string& ell, double x, const std::string& text) {
  if (ell == "one") return 1.0;
  if (x <= 1.0 && ell != "one")
    throw EvalError("pow_slowvar(" + ell + "): requires x > 1, got x = " + std::to_string(x));
  const double lx = std::log(x);
  if (ell == "log") return lx;
  if (ell == "log2") return lx * lx;
  if (ell == "loglog") {
    if (x <= std::exp(1.0))
      throw EvalError("pow_slowvar(loglog): requires x > e");
    return std::log(lx);
  }
  if (ell == "exp_sqrt_log") return std::exp(std::sqrt(lx));
  bad_spec(text, "unknown slowly-varying name '" + ell + "'");
}

}  // namespace

FunctionSpec FunctionSpec::parse(const std::string& raw, std::uint64_t seed) {
  const std::string text = strip(raw);
  const Call call = split_call(text);
  const auto need = [&](std::size_t n) {
    if (call.args.size() != n) {
      std::ostringstream os;
      os << call.name << " takes " << n << " argument(s), got " << call.args.size();
      bad_spec(text, os.str());
    }
  };

  if (call.name == "pow_slowvar") {
    need(2);
    const double kappa = num_arg(text, call.args[0]);
    const std::string ell = strip(call.args[1]);
    slowly_varying(ell, 3.0, text);  // validate the name eagerly
    return FunctionSpec(text, [kappa, ell, text](double x) {
      if (x <= 0.0) throw EvalError("pow_slowvar: requires x > 0");
      return std::pow(x, kappa) * slowly_varying(ell, x, text);
    });
  }
  if (call.name == "const") {
    need(1);
    const double c = num_arg(text, call.args[0]);
    return FunctionSpec(text, [c](double) { return c; });
  }
  if (call.name == "sin_osc") {
    need(0);
    return FunctionSpec(text, [](double x) { return 2.0 + std::sin(x); });
  }
  if (call.name == "affine_phi") {
    need(2);
    const double a = num_arg(text, call.args[0]);
    const double rho = num_arg(text, call.args[1]);
    return FunctionSpec(text, [a, rho](double x) { return a + rho * x; });
  }
  if (call.name == "sqrt_phi") {
    need(0);
    return FunctionSpec(text, [](double x) {
      if (x < 0.0) throw EvalError("sqrt_phi: requires x >= 0");
      return std::sqrt(x);
    });
  }
  if (call.name == "shifted_pow") {
    need(1);
    const double kappa = num_arg(text, call.args[0]);
    return FunctionSpec(text, [kappa](double x) {
      if (x <= -1.0) throw EvalError("shifted_pow: requires x > -1");
      return std::pow(1.0 + x, kappa);
    });
  }
  if (call.name == "const_plus_inv") {
    need(1);
    const double c = num_arg(text, call.args[0]);
    return FunctionSpec(text, [c](double x) {
      if (x == 0.0) throw EvalError("const_plus_inv: x = 0");
      return c + 1.0 / x;
    });
  }
  if (call.name == "const_plus_exp_decay") {
    need(1);
    const double c = num_arg(text, call.args[0]);
    return FunctionSpec(text, [c](double x) { return c + std::exp(-x); });
  }
  if (call.name == "scaled") {
    need(2);
    const double c = num_arg(text, call.args[0]);
    FunctionSpec base = parse(call.args[1], seed);
    return FunctionSpec(text, [c, base](double x) { return c * base(x); });
  }
  if (call.name == "inv") {
    need(1);
    FunctionSpec base = parse(call.args[0], seed);
    return FunctionSpec(text, [base](double x) {
      const double v = base(x);
      if (v == 0.0) throw EvalError("inv: base vanishes");
      return 1.0 / v;
    });
  }
  if (call.name == "spiked") {
    need(3);
    FunctionSpec base = parse(call.args[0], seed);
    const double fraction = num_arg(text, call.args[1]);
    const double height = num_arg(text, call.args[2]);
    if (!(fraction >= 0.0 && fraction <= 1.0))
      bad_spec(text, "spike fraction must be in [0, 1]");
    return FunctionSpec(text, [base, fraction, height, seed](double x) {
      if (hash_coin(x, seed, fraction)) return height;
      return base(x);
    });
  }
  bad_spec(text, "unknown builtin");
}

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PipelineError(FailureClass::data, "cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw PipelineError(FailureClass::data, path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,value")
    throw PipelineError(FailureClass::data, path + ": header must be exactly 'x,value'");
  std::vector<std::pair<double, double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty())
      throw PipelineError(FailureClass::data,
                          path + ":" + std::to_string(lineno) + ": blank row");
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw PipelineError(FailureClass::data,
                          path + ":" + std::to_string(lineno) + ": expected two fields");
    try {
      std::size_t used = 0;
      const std::string xs = line.substr(0, comma);
      const std::string vs = line.substr(comma + 1);
      const double x = std::stod(xs, &used);
      if (used != xs.size()) throw std::invalid_argument(xs);
      const double v = std::stod(vs, &used);
      if (used != vs.size()) throw std::invalid_argument(vs);
      rows.emplace_back(x, v);
    } catch (const std::exception&) {
      throw PipelineError(FailureClass::data,
                          path + ":" + std::to_string(lineno) + ": malformed row '" + line + "'");
    }
    if (rows.size() >= 2 && !(rows[rows.size() - 2].first < rows.back().first))
      throw PipelineError(FailureClass::data,
                          path + ":" + std::to_string(lineno) + ": x not strictly increasing");
  }
  if (rows.empty()) throw PipelineError(FailureClass::data, path + ": no data rows");
  return rows;
}

void write_xy_csv(const std::string& path,
                  const std::vector<std::pair<double, double>>& rows) {
  std::ofstream out(path);
  if (!out) throw PipelineError(FailureClass::data, "cannot write CSV file: " + path);
  out << "x,value\n";
  char buf[64];
  for (const auto& [x, v] : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, v);
    out << buf;
  }
}

}  // namespace regvar
