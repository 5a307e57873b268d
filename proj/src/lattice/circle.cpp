#include "kth/lattice/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kth/lattice/factorize.hpp"

namespace kth {

namespace {

using i128 = __int128;

long long to_ll(const BigInt& v, const char* what) {
  if (v > BigInt(std::numeric_limits<long long>::max()) || v < BigInt(std::numeric_limits<long long>::min()))
    throw ResourceLimit(std::string(what) + " does not fit in 64 bits");
  return static_cast<long long>(v);
}

long long isqrt_exact(i128 v) {
  if (v < 0) return -1;
  auto r = static_cast<long long>(std::sqrt(static_cast<long double>(v)));
  while (static_cast<i128>(r) * r > v) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= v) ++r;
  return static_cast<i128>(r) * r == v ? r : -1;
}

// Points with a given l: m^2 = l(2d - l) = l(2p - lq)/q.
void points_at(long long l, long long p, long long q, std::vector<std::pair<long long, long long>>& out) {
  const i128 num = static_cast<i128>(l) * (2 * static_cast<i128>(p) - static_cast<i128>(l) * q);
  if (num < 0 || num % q != 0) return;
  const long long m = isqrt_exact(num / q);
  if (m < 0) return;
  out.emplace_back(l, m);
  if (m != 0) out.emplace_back(l, -m);
}

struct LRange {
  long long lo, hi, p, q;
};

LRange l_range(const Rational& d) {
  if (d.is_zero()) throw std::invalid_argument("lattice_points_on_circle requires d != 0");
  const long long p = to_ll(d.num(), "numerator of d");
  const long long q = to_ll(d.den(), "denominator of d");
  if (std::abs(p) > (1LL << 40)) throw ResourceLimit("|d| too large for exhaustive enumeration");
  const BigInt two_d = (2 * d).floor();
  const BigInt two_d_c = (2 * d).ceil();
  return p > 0 ? LRange{0, to_ll(two_d, "2d"), p, q} : LRange{to_ll(two_d_c, "2d"), 0, p, q};
}

}  // namespace

BigInt r2_of_square(const BigInt& p) {
  if (p < 1) throw std::invalid_argument("r2_of_square requires p >= 1");
  BigInt count = 4;
  for (const auto& [prime, e] : factorize(p).factors)
    if (prime % 4 == 1) count *= 2 * e + 1;
  return count;
}

CircleLatticeSet lattice_points_on_circle_serial(const Rational& d) {
  const LRange r = l_range(d);
  CircleLatticeSet out{d, {}};
  for (long long l = r.lo; l <= r.hi; ++l) points_at(l, r.p, r.q, out.points);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

CircleLatticeSet lattice_points_on_circle(const Rational& d) {
  const LRange r = l_range(d);
  CircleLatticeSet out{d, {}};
  const long long span = r.hi - r.lo + 1;
#pragma omp parallel
  {
    std::vector<std::pair<long long, long long>> local;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < span; ++i) points_at(r.lo + i, r.p, r.q, local);
#pragma omp critical
    out.points.insert(out.points.end(), local.begin(), local.end());
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::variant<BigInt, UnsupportedDenominator> count_by_formula(const Rational& d) {
  if (d.is_zero()) throw std::invalid_argument("count_by_formula requires d != 0");
  const BigInt q = d.den();
  if (q > 5) return UnsupportedDenominator{q};
  // r2(p^2) divided by 1, 2, 4, 4, 4 for q = 1..5.
  static const int divisor[] = {0, 1, 2, 4, 4, 4};
  return r2_of_square(boost::multiprecision::abs(d.num())) / divisor[static_cast<int>(q)];
}

std::optional<Rational> schinzel_d_for_target(long long n) {
  if (n < 1) throw std::invalid_argument("schinzel_d_for_target requires n >= 1");
  if (n % 8 == 0) return std::nullopt;
  long long k = n;
  int denom;
  if (n % 4 == 0) {
    k = n / 4;
    denom = 1;
  } else if (n % 2 == 0) {
    k = n / 2;
    denom = 2;
  } else {
    denom = 3;
  }
  // b = 8pi, 4pi, 2pi for a single lattice-point family.
  if (k == 1) return Rational(1, denom == 3 ? 4 : denom);
  const Rational d(boost::multiprecision::pow(BigInt(5), static_cast<unsigned>((k - 1) / 2)), BigInt(denom));
  return d;
}

}  // namespace kth
