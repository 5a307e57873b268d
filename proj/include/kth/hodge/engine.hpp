#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kth/geom/forms.hpp"

namespace kth {

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// b^- of KT^4: b_2 = 4 and the signature vanishes, so b^+ = b^- = 2.
inline constexpr int kAntiSelfDualBetti = 2;

/// h^{1,0} = 1 always; h^{2,0} = 1 iff b lies in 4 pi Z, i.e. 2d is an integer.
std::pair<int, int> compute_h10_h20(const AcsParams& p);

/// How the n != 0 sectors were excluded.
struct ExclusionCertificate {
  std::string argument;          // closed-form reason valid for every sector
  long long sectors_checked = 0;  // sectors verified exactly against it
  bool all_nonconstant = true;
};

struct H01Result {
  long long count = 0;
  std::vector<HarmonicForm> basis;
  ExclusionCertificate certificate;
};

/// Exact h^{0,1} for rational d; sector exclusion is re-verified on
/// |k| <= kcheck, 0 < |n| <= ncheck.
H01Result compute_h01(const AcsParams& p, const MetricSpec& metric, long long kcheck = 3, long long ncheck = 3);

/// d solving 64 pi^2 d^4 + 256 pi u |n| d^2 - n^2 = 0, i.e.
/// 8 pi d^2 = |n| (-16 u + sqrt(256 u^2 + 1)). For this d the sectors with
/// k = 0 and |n| fixed have b2 b3 / (lambda1 - lambda2) = 4u.
struct SurdCase {
  long long n = 1;
  long long u = -1;
  double d = 0;
  BigInt discriminant;   // 256 u^2 + 1; 8 pi d^2 lies in Z[sqrt(discriminant)]
  double residual = 0;   // relative residual of the quartic at d
};

SurdCase solve_deq(long long n, long long u);

/// True when no other |N| <= nmax admits an integer sector invariant at d,
/// so the sectors counted for this d are the only ones.
bool surd_sector_unique(const SurdCase& c, long long nmax = 50);

struct SurdSectorReport {
  HeisenbergSector sector;
  long long kindex = 0;
  double oracle_defect = 0;
  double residual = 0;
};

struct SurdH01 {
  long long count = 0;
  std::vector<HarmonicForm> basis;
  std::vector<SurdSectorReport> sectors;
};

/// 2|n| + 1: the constant form plus one Schwartz pair in each sector
/// (0, m, +-n). Every pair is certified by the matching oracle; throws
/// OracleDisagreement when one fails `tol`.
SurdH01 compute_h01_surd(const SurdCase& c, const Rational& a, double tol = 1e-5);

struct H11Result {
  long long closed_form = 0;  // b^- + 1
  long long direct = 0;       // n = 0 linear systems solved exactly
  long long boxes_checked = 0;
};

/// Standard metric only; throws Unsupported for h_rho. `box` bounds the
/// explicit (k, l, m) scan that backs the symbolic exclusion.
H11Result compute_h11(const AcsParams& p, const MetricSpec& metric, long long box = 3);

/// Exact kernel dimension of the four n = 0 (1,1) equations at (k, l, m).
long long h11_zero_sector_dim(const AcsParams& p, const ZeroSector& s);

enum class Provenance { Computed, SerreDual, ClosedForm };
std::string to_string(Provenance p);

struct HodgeDiamond {
  std::array<std::array<long long, 3>, 3> h{};
  std::array<std::array<Provenance, 3>, 3> provenance{};
  AcsParams params;
  MetricSpec metric;

  std::string ascii() const;
};

HodgeDiamond hodge_diamond(const AcsParams& p, const MetricSpec& metric);

struct KsRow {
  long long K = 1;
  Rational d;
  long long standard = 0;
  long long rho = 0;
};

/// d = 5^((K-1)/2) / 3 with h^{0,1} computed for both metrics.
KsRow ks_demo(long long K, const Rational& a, const Rational& r);

/// |n| <= sqrt(2) b^2 / (8 pi) = 8 sqrt(2) pi d^2.
double n_bound(const Rational& d);

}  // namespace kth
