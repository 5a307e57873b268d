#include "kth/hodge/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "kth/ode/matching.hpp"

namespace kth {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::pair<int, int> compute_h10_h20(const AcsParams& p) {
  return {1, (Rational(2) * p.d).is_integer() ? 1 : 0};
}

H01Result compute_h01(const AcsParams& p, const MetricSpec& metric, long long kcheck, long long ncheck) {
  H01Result r;
  r.basis = zero_sector_solutions(p, metric);
  r.count = static_cast<long long>(r.basis.size());
  const Rational d2 = p.d * p.d;
  if (metric.is_standard()) {
    r.certificate.argument =
        "kappa = pi (k - d i)^2 / |n| + |n| / (64 pi d^2); the pi^-1 coefficient |n| / (64 d^2) never vanishes, "
        "so kappa is not a rational constant in any sector";
  } else {
    r.certificate.argument =
        "T = -64 n^2 (k - d i)^2 pi^4 D^2 - (n^4 / d^2) pi^2 D with D = 1 + rho^2; T^2 has a nonzero pi^4 term "
        "while pi^6 D^5 starts at pi^6, so kappa^2 is not a rational constant in any sector";
  }
  for (const auto& s : heisenberg_sectors(kcheck, ncheck)) {
    const SectorCondition c = heisenberg_sector_condition(p, metric, s);
    const long long an = std::llabs(s.n);
    bool ok = !c.kindex && qpi_classify(c.value).kind == QPiClass::Kind::Nonconstant;
    if (metric.is_standard()) {
      ok = ok && c.value.coeff(-1) == GaussRational(Rational(an) / (Rational(64) * d2));
    } else {
      const Rational n4 = Rational(an * an * an * an);
      ok = ok && c.value.min_exponent() == 4 && c.value.coeff(4) == GaussRational(n4 * n4 / (d2 * d2));
    }
    r.certificate.all_nonconstant = r.certificate.all_nonconstant && ok;
    ++r.certificate.sectors_checked;
  }
  if (!r.certificate.all_nonconstant) throw std::logic_error("sector exclusion certificate failed for rational d");
  return r;
}

SurdCase solve_deq(long long n, long long u) {
  if (n == 0) throw std::invalid_argument("solve_deq requires n != 0");
  if (u >= 0) throw std::invalid_argument("solve_deq requires u < 0");
  SurdCase c;
  c.n = n;
  c.u = u;
  c.discriminant = BigInt(256) * u * u + 1;
  const double an = static_cast<double>(std::llabs(n));
  const double ud = static_cast<double>(u);
  const double t = -16 * ud + std::sqrt(256 * ud * ud + 1);
  c.d = std::sqrt(an * t / (8 * kPi));
  const double d2 = c.d * c.d;
  const double terms[] = {64 * kPi * kPi * d2 * d2, 256 * kPi * ud * an * d2, -an * an};
  c.residual = std::abs(terms[0] + terms[1] + terms[2]) /
               (std::abs(terms[0]) + std::abs(terms[1]) + std::abs(terms[2]));
  return c;
}

bool surd_sector_unique(const SurdCase& c, long long nmax) {
  // Only k = 0 can work (Im kappa = -2 k d pi / |n|); there kappa is real.
  const double pd2 = kPi * c.d * c.d;
  for (long long N = 1; N <= nmax; ++N) {
    if (N == std::llabs(c.n)) continue;
    const double nn = static_cast<double>(N);
    const double kappa = -pd2 / nn + nn / (64 * pd2);
    const double nearest = std::round(kappa);
    if (nearest <= -1 && std::abs(kappa - nearest) < 1e-6) return false;
  }
  return true;
}

SurdH01 compute_h01_surd(const SurdCase& c, const Rational& a, double tol) {
  SurdH01 out;
  out.basis.push_back({FormDegree::Zero1, {TrigComponent{{0, 0, 0}, {QPiC(1), QPiC()}}}});
  const FloatAcs acs{a.to_double(), c.d};
  std::vector<double> xs;
  for (int i = 0; i <= 100; ++i) xs.push_back(-10.0 + 0.2 * i);
  const long long an = std::llabs(c.n);
  for (long long sign : {1LL, -1LL}) {
    for (long long m = 0; m < an; ++m) {
      const HeisenbergSector s(0, m, sign * an);
      const PencilSystem sys = sector_system_float(acs, 0.0, s);
      const auto verdict = l2_solvability(sys);
      const auto* ok = std::get_if<Solvable>(&verdict);
      if (!ok) throw OracleDisagreement("surd sector fails the solvability criterion");
      SurdSectorReport rep{s, ok->kindex, 0, 0};
      const SchwartzSolution sol = construct_schwartz_solution(sys);
      rep.residual = residual(sol, sys, xs);
      const MatchResult mr = matching_oracle(sys, 0, tol);
      rep.oracle_defect = mr.defect;
      if (!mr.l2_exists) {
        std::ostringstream os;
        os << "matching oracle rejects surd sector (k,m,n) = (0," << m << "," << s.n << "), defect " << mr.defect;
        throw OracleDisagreement(os.str());
      }
      out.sectors.push_back(rep);
      out.basis.push_back({FormDegree::Zero1, {WBComponent{s, sol}}});
    }
  }
  out.count = static_cast<long long>(out.basis.size());
  return out;
}

long long h11_zero_sector_dim(const AcsParams& p, const ZeroSector& s) {
  // Unknowns (f11, f12, f21, f22); equations divided by pi i, with b/(4 pi) = 2d.
  const GaussRational k(s.k), l(s.l), m(s.m), I = GaussRational::i();
  const GaussRational two_d_i = GaussRational(Rational(2) * p.d) * I;
  const GaussRational zero;
  std::vector<std::vector<GaussRational>> rows{
      {m, -(k + I * l - two_d_i), two_d_i, zero},
      {zero, zero, m, -(k + I * l)},
      {zero, -two_d_i, k - I * l - two_d_i, m},
      {k - I * l, m, zero, zero},
  };
  return static_cast<long long>(nullspace(std::move(rows), 4).size());
}

H11Result compute_h11(const AcsParams& p, const MetricSpec& metric, long long box) {
  if (!metric.is_standard()) throw Unsupported("h^{1,1} is only available for the standard (almost Kaehler) metric");
  H11Result r;
  r.closed_form = kAntiSelfDualBetti + 1;
  // Away from the origin the system has determinant
  // (k^2 + l^2 + m^2)(k^2 + l^2 + m^2 - 4 d k i), which vanishes only if
  // 4 pi (k^2 + l^2 + m^2) + 2 k b i does; that QPiC has pi-coefficient
  // 4 (k^2 + l^2 + m^2) + 16 d k i, nonzero unless k = l = m = 0.
  for (long long k = -box; k <= box; ++k) {
    for (long long l = -box; l <= box; ++l) {
      for (long long m = -box; m <= box; ++m) {
        const long long dim = h11_zero_sector_dim(p, {k, l, m});
        const bool origin = k == 0 && l == 0 && m == 0;
        const long long sq = k * k + l * l + m * m;
        const QPiC requirement = QPiC::pi(1) * QPiC(4 * sq) + QPiC(2 * k) * p.b() * QPiC::i();
        if (!origin && (requirement.is_zero() || dim != 0))
          throw std::logic_error("h11 exclusion failed away from the origin");
        r.direct += dim;
        ++r.boxes_checked;
      }
    }
  }
  return r;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Computed: return "computed";
    case Provenance::SerreDual: return "serre_dual";
    case Provenance::ClosedForm: return "closed_form";
  }
  return "?";
}

HodgeDiamond hodge_diamond(const AcsParams& p, const MetricSpec& metric) {
  HodgeDiamond hd{{}, {}, p, metric};
  const auto [h10, h20] = compute_h10_h20(p);
  auto set = [&](int i, int j, long long v, Provenance pr) {
    hd.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    hd.provenance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pr;
  };
  set(0, 0, 1, Provenance::ClosedForm);
  set(1, 0, h10, Provenance::ClosedForm);
  set(2, 0, h20, Provenance::ClosedForm);
  const H11Result h11 = compute_h11(p, metric);
  if (h11.closed_form != h11.direct) throw std::logic_error("h11 paths disagree");
  set(1, 1, h11.direct, Provenance::Computed);
  set(0, 1, compute_h01(p, metric).count, Provenance::Computed);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i + j > 2 || (i + j == 2 && i < j)) set(i, j, hd.h[static_cast<std::size_t>(2 - i)][static_cast<std::size_t>(2 - j)], Provenance::SerreDual);
  return hd;
}

std::string HodgeDiamond::ascii() const {
  auto v = [this](int i, int j) { return std::to_string(h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]); };
  std::ostringstream os;
  os << "        " << v(0, 0) << "\n";
  os << "    " << v(1, 0) << "       " << v(0, 1) << "\n";
  os << v(2, 0) << "       " << v(1, 1) << "       " << v(0, 2) << "\n";
  os << "    " << v(2, 1) << "       " << v(1, 2) << "\n";
  os << "        " << v(2, 2) << "\n";
  return os.str();
}

KsRow ks_demo(long long K, const Rational& a, const Rational& r) {
  if (K < 1 || K % 2 == 0) throw std::invalid_argument("ks_demo requires an odd K >= 1");
  KsRow row;
  row.K = K;
  row.d = Rational(boost::multiprecision::pow(BigInt(5), static_cast<unsigned>((K - 1) / 2)), BigInt(3));
  const AcsParams p(a, row.d);
  row.standard = compute_h01(p, MetricSpec::standard()).count;
  row.rho = compute_h01(p, MetricSpec::rho(r)).count;
  return row;
}

double n_bound(const Rational& d) {
  if (d.is_zero()) throw std::invalid_argument("n_bound requires d != 0");
  const double dd = d.to_double();
  return 8 * std::numbers::sqrt2 * kPi * dd * dd;
}

}  // namespace kth
