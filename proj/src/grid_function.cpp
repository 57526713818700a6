#include "tubepot/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tubepot/errors.hpp"

namespace tubepot {

void GridFunction::check() const {
  const std::size_t m = u.size();
  if (h.size() != m || h1.size() != m || h2.size() != m)
    throw InconsistentInputError("grid column lengths differ");
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(h[i]) || !std::isfinite(h1[i]) ||
        !std::isfinite(h2[i]))
      throw InconsistentInputError("grid contains a non-finite entry");
  }
  if (m > 0 && u[0] != 0.0)
    throw InconsistentInputError("grid must start at u = 0");
  for (std::size_t i = 1; i < m; ++i)
    if (!(u[i] > u[i - 1]))
      throw InconsistentInputError("grid abscissae must be strictly increasing");
}

namespace {

std::size_t segment_of(const GridFunction& g, double x) {
  if (g.size() < 2) throw std::domain_error("grid too short to interpolate");
  if (x < g.u.front() || x > g.u.back())
    throw std::domain_error("interpolation abscissa outside grid range");
  auto it = std::upper_bound(g.u.begin(), g.u.end(), x);
  std::size_t i = static_cast<std::size_t>(it - g.u.begin());
  if (i == 0) return 0;
  if (i >= g.size()) return g.size() - 2;
  return i - 1;
}

}  // namespace

double eval_h(const GridFunction& g, double x) {
  const std::size_t i = segment_of(g, x);
  const double d = g.u[i + 1] - g.u[i];
  const double t = (x - g.u[i]) / d;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double b0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
  const double b1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
  const double b2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
  const double b3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
  const double b4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
  const double b5 = 0.5 * t3 - t4 + 0.5 * t5;
  return g.h[i] * b0 + d * g.h1[i] * b1 + d * d * g.h2[i] * b2 +
         g.h[i + 1] * b3 + d * g.h1[i + 1] * b4 + d * d * g.h2[i + 1] * b5;
}

double eval_h1(const GridFunction& g, double x) {
  const std::size_t i = segment_of(g, x);
  const double d = g.u[i + 1] - g.u[i];
  const double t = (x - g.u[i]) / d;
  const double t2 = t * t, t3 = t2 * t;
  const double b0 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double b1 = t3 - 2.0 * t2 + t;
  const double b2 = -2.0 * t3 + 3.0 * t2;
  const double b3 = t3 - t2;
  return g.h1[i] * b0 + d * g.h2[i] * b1 + g.h1[i + 1] * b2 +
         d * g.h2[i + 1] * b3;
}

double eval_h2(const GridFunction& g, double x) {
  const std::size_t i = segment_of(g, x);
  const double t = (x - g.u[i]) / (g.u[i + 1] - g.u[i]);
  return g.h2[i] * (1.0 - t) + g.h2[i + 1] * t;
}

long find_node(const GridFunction& g, double x) {
  auto it = std::lower_bound(g.u.begin(), g.u.end(), x);
  if (it != g.u.end() && *it == x) return it - g.u.begin();
  return -1;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_csv(const GridFunction& g) {
  std::string out = "u,h,h1,h2\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    out += format_double(g.u[i]);
    out += ',';
    out += format_double(g.h[i]);
    out += ',';
    out += format_double(g.h1[i]);
    out += ',';
    out += format_double(g.h2[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const GridFunction& g) {
  std::string out = "[";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ',';
    out += "\n  {\"u\": " + format_double(g.u[i]) +
           ", \"h\": " + format_double(g.h[i]) +
           ", \"h1\": " + format_double(g.h1[i]) +
           ", \"h2\": " + format_double(g.h2[i]) + "}";
  }
  out += g.empty() ? "]" : "\n]";
  return out;
}

GridFunction grid_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "u,h,h1,h2")
    throw InconsistentInputError("missing or malformed CSV header");
  GridFunction g;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[4];
    const char* p = line.c_str();
    char* end = nullptr;
    for (int c = 0; c < 4; ++c) {
      v[c] = std::strtod(p, &end);
      if (end == p) throw InconsistentInputError("bad CSV number: " + line);
      p = end;
      if (c < 3) {
        if (*p != ',') throw InconsistentInputError("bad CSV row: " + line);
        ++p;
      }
    }
    g.push_back(v[0], v[1], v[2], v[3]);
  }
  g.check();
  return g;
}

GridFunction grid_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw InconsistentInputError("grid JSON must be an array");
  GridFunction g;
  for (const auto& rec : j) {
    g.push_back(rec.at("u").get<double>(), rec.at("h").get<double>(),
                rec.at("h1").get<double>(), rec.at("h2").get<double>());
  }
  g.check();
  return g;
}

}  // namespace tubepot
