#include "kth/oracle/spectral.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "kth/hodge/engine.hpp"

namespace kth {

namespace {

using i128 = __int128;

struct GI {
  i128 re = 0, im = 0;
  GI operator+(GI o) const { return {re + o.re, im + o.im}; }
  GI operator-(GI o) const { return {re - o.re, im - o.im}; }
  GI operator*(GI o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  bool zero() const { return re == 0 && im == 0; }
};

// Polynomial in pi of degree <= 2 with Gaussian-integer coefficients.
struct PiPoly {
  GI c[3];
  PiPoly operator*(const PiPoly& o) const {
    PiPoly r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; i + j < 3; ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    return r;
  }
  PiPoly operator-(const PiPoly& o) const {
    PiPoly r;
    for (int i = 0; i < 3; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  bool zero() const { return c[0].zero() && c[1].zero() && c[2].zero(); }
};

struct ScanParams {
  i128 p, q;  // d = p/q
  i128 s, t;  // rho = (s/t) pi; s = 0 for the standard metric
};

ScanParams scan_params(const AcsParams& a, const MetricSpec& metric) {
  ScanParams sp;
  sp.p = static_cast<long long>(a.d.num());
  sp.q = static_cast<long long>(a.d.den());
  sp.s = metric.is_standard() ? 0 : static_cast<long long>(metric.r.num());
  sp.t = metric.is_standard() ? 1 : static_cast<long long>(metric.r.den());
  return sp;
}

// Row 1 (times q):      [-m q,  k q + i (l q - 2 p)]
// Row 2 (times t^2):    [(t^2 + s^2 pi^2)(k - i l) + s t pi m,  t^2 m + s t pi (k - i l)]
// The system is singular iff the determinant vanishes as a polynomial in pi.
bool singular(const ScanParams& sp, long long k, long long l, long long m) {
  const GI kil{k, -l};
  PiPoly a11, a12, a21, a22;
  a11.c[0] = {-static_cast<i128>(m) * sp.q, 0};
  a12.c[0] = {static_cast<i128>(k) * sp.q, static_cast<i128>(l) * sp.q - 2 * sp.p};
  a21.c[0] = GI{sp.t * sp.t, 0} * kil;
  a21.c[1] = {sp.s * sp.t * m, 0};
  a21.c[2] = GI{sp.s * sp.s, 0} * kil;
  a22.c[0] = {sp.t * sp.t * m, 0};
  a22.c[1] = GI{sp.s * sp.t, 0} * kil;
  return (a11 * a22 - a12 * a21).zero();
}

long long scan(const ScanParams& sp, long long bound, bool parallel) {
  long long count = 0;
#pragma omp parallel for reduction(+ : count) schedule(dynamic) if (parallel)
  for (long long k = -bound; k <= bound; ++k)
    for (long long l = -bound; l <= bound; ++l)
      for (long long m = -bound; m <= bound; ++m)
        if (singular(sp, k, l, m)) ++count;  // the rows never vanish together, so the kernel is 1-dimensional
  return count;
}

OracleH01Result run(const AcsParams& p, const MetricSpec& metric, const OracleOptions& opt, bool parallel) {
  OracleH01Result r;
  const double two_d = std::abs(2 * p.d.to_double());
  const long long lm = opt.lmbound > 0 ? opt.lmbound : static_cast<long long>(std::ceil(two_d)) + 1;
  if (static_cast<double>(lm) < two_d) {
    std::ostringstream os;
    os << "n = 0 scan bound " << lm << " is below 2|d| = " << two_d << "; lattice points may be missed";
    r.warnings.push_back(os.str());
  }
  r.zero_sector_count = scan(scan_params(p, metric), lm, parallel);

  const double nb = n_bound(p.d);
  const long long ncap = std::min<long long>(opt.nmax, static_cast<long long>(std::floor(nb)));
  if (static_cast<double>(opt.nmax) < nb) {
    std::ostringstream os;
    os << "sectors with " << opt.nmax << " < |n| <= " << nb << " skipped";
    r.warnings.push_back(os.str());
  }
  {
    std::ostringstream os;
    os << "sectors with |k| > " << opt.kmax << " skipped";
    r.warnings.push_back(os.str());
  }
  const auto sectors = heisenberg_sectors(opt.kmax, ncap);
  r.sectors.resize(sectors.size());
  std::vector<std::string> errors(sectors.size());
  const long long ns = static_cast<long long>(sectors.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < ns; ++i) {
    const auto& s = sectors[static_cast<std::size_t>(i)];
    auto& rep = r.sectors[static_cast<std::size_t>(i)];
    rep.sector = s;
    try {
      const ExactSectorSystem sys = sector_system(p, metric, s);
      const FdKernelResult fd = fd_sector_kernel(sys.to_float(), {0, 0, opt.tol});
      rep.oracle_dim = fd.dim;
      rep.sigma_min = fd.sigma_min;
      rep.sigma_gap = fd.sigma_gap;
      rep.criterion_solvable = heisenberg_sector_condition(p, metric, s).kindex.has_value();
      rep.agree = (rep.oracle_dim == 1) == rep.criterion_solvable;
      if (fd.ill_conditioned) errors[static_cast<std::size_t>(i)] = "ill-conditioned";
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
      rep.agree = false;
    }
  }
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    r.heisenberg_count += r.sectors[i].oracle_dim;
    if (!errors[i].empty()) {
      std::ostringstream os;
      os << "sector (" << sectors[i].k << "," << sectors[i].m << "," << sectors[i].n << "): " << errors[i];
      r.warnings.push_back(os.str());
    }
  }
  r.count = r.zero_sector_count + r.heisenberg_count;
  return r;
}

}  // namespace

long long zero_sector_scan(const AcsParams& p, const MetricSpec& metric, long long bound, bool parallel) {
  return scan(scan_params(p, metric), bound, parallel);
}

OracleH01Result oracle_h01(const AcsParams& p, const MetricSpec& metric, const OracleOptions& opt) {
  return run(p, metric, opt, true);
}

OracleH01Result oracle_h01_serial(const AcsParams& p, const MetricSpec& metric, const OracleOptions& opt) {
  return run(p, metric, opt, false);
}

}  // namespace kth
