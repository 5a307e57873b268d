#include "kth/lattice/factorize.hpp"

#include <algorithm>
#include <map>

#include <boost/integer/common_factor_rt.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>

namespace kth {

namespace mp = boost::multiprecision;

BigInt Factorization::product() const {
  BigInt p = 1;
  for (const auto& [prime, e] : factors) p *= mp::pow(prime, e);
  return p;
}

BigInt default_factor_limit() { return BigInt(1) << 96; }

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  // Fixed seed: results must not depend on the run.
  static thread_local boost::random::mt19937 rng(0x5eed);
  return mp::miller_rabin_test(n, 25, rng);
}

namespace {

BigInt pollard_brent(const BigInt& n, unsigned long long c_seed) {
  if (n % 2 == 0) return 2;
  BigInt y = 2 + c_seed % (n - 3 > 0 ? n - 3 : BigInt(1));
  const BigInt c = 1 + c_seed;
  const unsigned batch = 64;
  BigInt g = 1, r = 1, q = 1, x, ys;
  auto f = [&](const BigInt& v) { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (BigInt i = 0; i < r; ++i) y = f(y);
    BigInt k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (BigInt i = 0; i < std::min<BigInt>(batch, r - k); ++i) {
        y = f(y);
        q = (q * (x > y ? x - y : y - x)) % n;
      }
      g = mp::gcd(q, n);
      k += batch;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = mp::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void split(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  const BigInt s = isqrt(n);
  if (s * s == n) {
    split(s, out);
    split(s, out);
    return;
  }
  for (unsigned long long seed = 1;; ++seed) {
    const BigInt d = pollard_brent(n, seed);
    if (d != 1 && d != n) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
}

}  // namespace

Factorization factorize(const BigInt& n, const BigInt& limit) {
  if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
  if (n > limit) throw ResourceLimit("factorize: input exceeds the configured limit");
  std::map<BigInt, unsigned> acc;
  BigInt rest = n;
  for (unsigned p = 2; p < 1000 && BigInt(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
    while (rest % p == 0) {
      ++acc[BigInt(p)];
      rest /= p;
    }
  }
  split(rest, acc);
  Factorization f{n, {}};
  f.factors.assign(acc.begin(), acc.end());
  return f;
}

}  // namespace kth
