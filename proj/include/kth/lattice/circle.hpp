#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kth/exact/rational.hpp"

namespace kth {

/// Integer points (l, m) on the circle (l - d)^2 + m^2 = d^2, i.e. through
/// the origin with centre (d, 0). Points are sorted lexicographically.
struct CircleLatticeSet {
  Rational d;
  std::vector<std::pair<long long, long long>> points;

  std::size_t count() const { return points.size(); }
};

/// 4 * prod(beta_j + 1) over primes = 1 mod 4 with multiplicity beta_j in p^2.
BigInt r2_of_square(const BigInt& p);

/// Exhaustive enumeration over l in [min(0, 2d), max(0, 2d)]. Parallel over l
/// when built with OpenMP.
CircleLatticeSet lattice_points_on_circle(const Rational& d);
/// Same enumeration, single-threaded; kept as the reference for tests and benchmarks.
CircleLatticeSet lattice_points_on_circle_serial(const Rational& d);

struct UnsupportedDenominator {
  BigInt q;
};

/// Closed-form count for denominators 1..5; UnsupportedDenominator beyond.
std::variant<BigInt, UnsupportedDenominator> count_by_formula(const Rational& d);

/// Schinzel-circle radius with exactly n lattice points, or nullopt when 8 | n.
std::optional<Rational> schinzel_d_for_target(long long n);

}  // namespace kth
