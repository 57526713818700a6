#include "tubepot/spaces.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tubepot {

namespace {

constexpr double kPi = 3.14159265358979323846;

double r_max_of(Family family) {
  return family == Family::RealHyperbolic
             ? kPi
             : std::numeric_limits<double>::infinity();
}

void check_radial_domain(const SpaceSpec& space, double u) {
  if (!(u >= 0.0))
    throw std::domain_error("radial coordinate must be nonnegative");
  if (space.family == Family::RealHyperbolic && u > kPi * (1.0 + 1e-12))
    throw std::domain_error("radial coordinate exceeds the hyperbolic tube limit pi");
}

}  // namespace

int forced_k(Family family, int n) {
  switch (family) {
    case Family::Euclidean:
    case Family::RealHyperbolic:
      return 0;  // no density exponent in these families
    case Family::RoundSphere:
    case Family::RealProjective:
      return n - 1;
    case Family::ComplexProjective:
      return 1;
    case Family::QuaternionicProjective:
      return 3;
    case Family::CayleyPlane:
      return 7;
  }
  throw std::logic_error("unreachable family");
}

bool is_compact(Family family) {
  return family != Family::Euclidean && family != Family::RealHyperbolic;
}

SpaceSpec SpaceSpec::make(Family family, int n) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  return SpaceSpec{family, n, forced_k(family, n), r_max_of(family)};
}

SpaceSpec SpaceSpec::make(Family family, int n, int k) {
  SpaceSpec s = make(family, n);
  if (k != s.k)
    throw std::invalid_argument("density exponent k=" + std::to_string(k) +
                                " not admitted by " + family_name(family) +
                                " with n=" + std::to_string(n));
  return s;
}

double density(const SpaceSpec& space, double u) {
  check_radial_domain(space, u);
  const int m = space.n - 1;
  switch (space.family) {
    case Family::Euclidean:
      return std::pow(u, m);
    case Family::RealHyperbolic: {
      const double s = std::max(std::sin(std::min(u, kPi)), 0.0);
      return std::pow(s, m);
    }
    case Family::RoundSphere:
    case Family::RealProjective:
      return std::pow(std::sinh(u), m);
    case Family::ComplexProjective:
    case Family::QuaternionicProjective:
    case Family::CayleyPlane:
      return std::pow(2.0, m) * std::pow(std::cosh(0.5 * u), space.k) *
             std::pow(std::sinh(0.5 * u), m);
  }
  throw std::logic_error("unreachable family");
}

double density_nth_root(const SpaceSpec& space, double u) {
  if (space.n < 2)
    throw std::domain_error("density_nth_root requires n >= 2");
  check_radial_domain(space, u);
  const double m = space.n - 1;
  switch (space.family) {
    case Family::Euclidean:
      return u;
    case Family::RealHyperbolic:
      return std::max(std::sin(std::min(u, kPi)), 0.0);
    case Family::RoundSphere:
    case Family::RealProjective:
      return std::sinh(u);
    case Family::ComplexProjective:
    case Family::QuaternionicProjective:
    case Family::CayleyPlane:
      return 2.0 * std::pow(std::cosh(0.5 * u), space.k / m) *
             std::sinh(0.5 * u);
  }
  throw std::logic_error("unreachable family");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::Euclidean: return "euclidean";
    case Family::RealHyperbolic: return "hyperbolic";
    case Family::RoundSphere: return "sphere";
    case Family::RealProjective: return "rp";
    case Family::ComplexProjective: return "cp";
    case Family::QuaternionicProjective: return "hp";
    case Family::CayleyPlane: return "cayley";
  }
  throw std::logic_error("unreachable family");
}

std::optional<Family> parse_family(std::string_view token) {
  if (token == "euclidean") return Family::Euclidean;
  if (token == "hyperbolic") return Family::RealHyperbolic;
  if (token == "sphere") return Family::RoundSphere;
  if (token == "rp") return Family::RealProjective;
  if (token == "cp") return Family::ComplexProjective;
  if (token == "hp") return Family::QuaternionicProjective;
  if (token == "cayley") return Family::CayleyPlane;
  return std::nullopt;
}

}  // namespace tubepot
