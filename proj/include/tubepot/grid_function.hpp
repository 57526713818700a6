#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace tubepot {

/// Sampled radial function with first and second derivatives. The abscissae
/// are strictly increasing and start at 0.
struct GridFunction {
  std::vector<double> u;
  std::vector<double> h;
  std::vector<double> h1;
  std::vector<double> h2;

  std::size_t size() const { return u.size(); }
  bool empty() const { return u.empty(); }

  void push_back(double uu, double hh, double d1, double d2) {
    u.push_back(uu);
    h.push_back(hh);
    h1.push_back(d1);
    h2.push_back(d2);
  }

  /// Throws InconsistentInputError unless sizes match, u is strictly
  /// increasing from 0, and every entry is finite.
  void check() const;
};

/// Quintic two-point Hermite evaluation of h at x (uses h, h1, h2 at the
/// bracketing nodes). x must lie within [u.front(), u.back()].
double eval_h(const GridFunction& g, double x);

/// Cubic Hermite evaluation of h' at x (uses h1 with h2 as its derivative).
double eval_h1(const GridFunction& g, double x);

/// Piecewise-linear evaluation of h'' at x.
double eval_h2(const GridFunction& g, double x);

/// Index of the exact grid node at x, or -1. Nodes inserted as probes are
/// recovered bit-exactly.
long find_node(const GridFunction& g, double x);

// Serialization. Numbers are written with 17 significant digits so a
// write/parse cycle reproduces every double bit-exactly. CSV carries the
// mandatory header "u,h,h1,h2"; JSON is an array of {u,h,h1,h2} records.
std::string to_csv(const GridFunction& g);
std::string to_json(const GridFunction& g);
GridFunction grid_from_csv(const std::string& text);
GridFunction grid_from_json(const std::string& text);

/// printf-style %.17g rendering used by every serializer in the project.
std::string format_double(double x);

}  // namespace tubepot
