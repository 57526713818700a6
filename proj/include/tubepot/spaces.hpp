#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tubepot {

/// Center-manifold families whose tangent bundles carry Grauert tubes with
/// a radial potential ODE. The three projective entries share one density
/// shape and differ only in the exponent k.
enum class Family {
  Euclidean,
  RealHyperbolic,
  RoundSphere,
  RealProjective,
  ComplexProjective,
  QuaternionicProjective,
  CayleyPlane,
};

/// Density exponent k forced by the family (n-dependent for the spheres).
int forced_k(Family family, int n);

bool is_compact(Family family);

/// Identifies a center manifold: family tag, real dimension n, density
/// exponent k, and the maximal tube radius.
struct SpaceSpec {
  Family family;
  int n;
  int k;
  double r_max;

  /// Builds a spec with k inferred from the family. Throws
  /// std::invalid_argument for n < 1.
  static SpaceSpec make(Family family, int n);

  /// Builds a spec with an explicit k, rejecting values the family does not
  /// admit.
  static SpaceSpec make(Family family, int n, int k);
};

/// Density D_M(u) on the tube's radial coordinate:
///   u^{n-1}                     Euclidean
///   sin^{n-1}(u)                real hyperbolic, u in [0, pi]
///   sinh^{n-1}(u)               round sphere / real projective
///   2^{n-1} cosh^k(u/2) sinh^{n-1}(u/2)   complex/quaternionic projective,
///                                          Cayley plane
/// Nonnegative; zero iff u = 0 when n >= 2. Throws std::domain_error for u
/// outside the family's range.
double density(const SpaceSpec& space, double u);

/// D_M(u)^{1/(n-1)} in closed form per family, normalized so the value at 0
/// is exactly 0 and the slope there is exactly 1. Requires n >= 2 (the n = 1
/// equation never takes this root).
double density_nth_root(const SpaceSpec& space, double u);

/// CLI token for the family (euclidean, hyperbolic, sphere, rp, cp, hp,
/// cayley).
std::string family_name(Family family);

std::optional<Family> parse_family(std::string_view token);

}  // namespace tubepot
