#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kth/exact/qpic.hpp"
#include "kth/ode/pencil.hpp"

namespace kth {

/// Almost complex structure J_{a,b} with b = 8 pi d and c = -(a^2 + 1) / b.
struct AcsParams {
  Rational a;
  Rational d;

  AcsParams(Rational a_, Rational d_);

  QPiC b() const { return QPiC::monomial(GaussRational(Rational(8) * d), 1); }
  QPiC b_inverse() const { return QPiC::monomial(GaussRational(Rational(1) / (Rational(8) * d)), -1); }
  QPiC c() const;
};

/// Numeric stand-in used where d is a quadratic surd.
struct FloatAcs {
  double a = 0;
  double d = 1;
};

/// Standard: phi1, phi2 unitary. Rho(r): phi1 - rho phi2 and phi2 unitary with rho = r pi.
struct MetricSpec {
  enum class Kind { Standard, Rho };
  Kind kind = Kind::Standard;
  Rational r;

  static MetricSpec standard() { return {}; }
  static MetricSpec rho(Rational r);
  bool is_standard() const { return kind == Kind::Standard; }
  QPiC rho_value() const;  // 0 for Standard
  double rho_float() const;
  std::string str() const;  // "standard" or "rho:r"
};

struct ZeroSector {
  long long k = 0, l = 0, m = 0;
  friend bool operator==(const ZeroSector&, const ZeroSector&) = default;
};

/// Sector with n != 0 and 0 <= m < |n|.
struct HeisenbergSector {
  long long k = 0, m = 0, n = 1;

  HeisenbergSector() = default;
  HeisenbergSector(long long k_, long long m_, long long n_);
  friend bool operator==(const HeisenbergSector&, const HeisenbergSector&) = default;
};

/// Every Heisenberg sector with |k| <= kmax and 0 < |n| <= nmax.
std::vector<HeisenbergSector> heisenberg_sectors(long long kmax, long long nmax);

/// Frame data at a point with coordinate x: components of V1, V2 on
/// (d/dt, d/dx, d/dy, d/dz) and of phi1, phi2 on (dt, dx, dy, dz).
struct Frame {
  std::array<QPiC, 4> V1, V2, phi1, phi2;
  QPiC structure_scalar;  // the b/4 term in dbar of conj(phi2)

  static Frame at(const AcsParams& p, const Rational& x);
  /// pairing(i, j) = phi_i(V_j)
  std::array<std::array<QPiC, 2>, 2> pairing() const;
};

/// Sector pencil with exact entries A = A_num / denom, B = B_num / denom.
/// denom is 1 for the standard metric and 1 + rho^2 otherwise.
struct ExactSectorSystem {
  std::array<QPiC, 4> A_num, B_num;  // row-major
  QPiC denom;

  PencilSystem to_float() const;
};

ExactSectorSystem sector_system(const AcsParams& p, const MetricSpec& metric, const HeisenbergSector& s);
PencilSystem sector_system_float(const FloatAcs& p, double rho, const HeisenbergSector& s);

/// Exact form of the sector solvability condition. For the standard metric
/// `value` is kappa = b2 b3 / (lambda1 - lambda2) itself, a Laurent
/// polynomial in pi. For h_rho the square root of 1 + rho^2 enters, so kappa^2
/// is kept instead as value / denom.
struct SectorCondition {
  bool squared = false;
  QPiC value;
  QPiC denom;
  cd approx;                       // float kappa
  std::optional<long long> kindex;  // set iff kappa == -kindex exactly, kindex >= 1
};

SectorCondition heisenberg_sector_condition(const AcsParams& p, const MetricSpec& metric, const HeisenbergSector& s);

/// Coefficient matrix of the n = 0 equations for (f, g) at (k, l, m), divided by pi i.
std::array<QPiC, 4> zero_sector_matrix(const AcsParams& p, const MetricSpec& metric, const ZeroSector& s);

}  // namespace kth
