#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "kth/exact/rational.hpp"

namespace kth {

struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Factorization {
  BigInt value;
  std::vector<std::pair<BigInt, unsigned>> factors;  // primes strictly increasing

  BigInt product() const;
};

/// Default ceiling on inputs to factorize(): 2^96.
BigInt default_factor_limit();

/// Complete prime factorization by trial division, then Pollard-Brent with
/// Miller-Rabin for the cofactor. Throws ResourceLimit above `limit`.
Factorization factorize(const BigInt& n, const BigInt& limit = default_factor_limit());

bool is_probable_prime(const BigInt& n);

}  // namespace kth
