#include "kth/geom/kt.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace kth {

namespace {

QPiC gauss(long long re, long long im = 0) { return QPiC(GaussRational(Rational(re), Rational(im))); }
QPiC q_of(const Rational& r) { return QPiC(GaussRational(r)); }
const QPiC kI = QPiC::i();

}  // namespace

AcsParams::AcsParams(Rational a_, Rational d_) : a(std::move(a_)), d(std::move(d_)) {
  if (d.is_zero()) throw std::invalid_argument("J_{a,b} requires b != 0, i.e. d != 0");
}

QPiC AcsParams::c() const { return -(q_of(a * a + Rational(1)) * b_inverse()); }

MetricSpec MetricSpec::rho(Rational r) {
  if (r.is_zero()) throw std::invalid_argument("rho metric requires r != 0");
  return {Kind::Rho, std::move(r)};
}

QPiC MetricSpec::rho_value() const {
  return is_standard() ? QPiC() : QPiC::monomial(GaussRational(r), 1);
}

double MetricSpec::rho_float() const { return is_standard() ? 0.0 : r.to_double() * std::numbers::pi; }

std::string MetricSpec::str() const { return is_standard() ? "standard" : "rho:" + r.str(); }

HeisenbergSector::HeisenbergSector(long long k_, long long m_, long long n_) : k(k_), m(m_), n(n_) {
  if (n == 0) throw std::invalid_argument("Heisenberg sector requires n != 0");
  if (m < 0 || m >= std::llabs(n)) throw std::invalid_argument("Heisenberg sector requires 0 <= m < |n|");
}

std::vector<HeisenbergSector> heisenberg_sectors(long long kmax, long long nmax) {
  std::vector<HeisenbergSector> out;
  for (long long n = -nmax; n <= nmax; ++n) {
    if (n == 0) continue;
    for (long long k = -kmax; k <= kmax; ++k)
      for (long long m = 0; m < std::llabs(n); ++m) out.emplace_back(k, m, n);
  }
  return out;
}

Frame Frame::at(const AcsParams& p, const Rational& x) {
  const QPiC half = q_of(Rational(1, 2));
  const QPiC xq = q_of(x);
  const QPiC a = q_of(p.a);
  const QPiC b = p.b();
  Frame f;
  f.V1 = {half, -(half * kI), QPiC(), QPiC()};
  f.V2 = {QPiC(), QPiC(), half, half * (xq - (a - kI) * p.b_inverse())};
  f.phi1 = {gauss(1), kI, QPiC(), QPiC()};
  f.phi2 = {QPiC(), QPiC(), gauss(1) - a * kI + kI * b * xq, -(kI * b)};
  f.structure_scalar = b * q_of(Rational(1, 4));
  return f;
}

std::array<std::array<QPiC, 2>, 2> Frame::pairing() const {
  auto dot = [](const std::array<QPiC, 4>& form, const std::array<QPiC, 4>& vec) {
    QPiC s;
    for (std::size_t i = 0; i < 4; ++i) s += form[i] * vec[i];
    return s;
  };
  return {{{dot(phi1, V1), dot(phi1, V2)}, {dot(phi2, V1), dot(phi2, V2)}}};
}

PencilSystem ExactSectorSystem::to_float() const {
  const cd den = denom.eval();
  PencilSystem s;
  for (int i = 0; i < 4; ++i) {
    s.A(i / 2, i % 2) = A_num[static_cast<std::size_t>(i)].eval() / den;
    s.B(i / 2, i % 2) = B_num[static_cast<std::size_t>(i)].eval() / den;
  }
  return s;
}

ExactSectorSystem sector_system(const AcsParams& p, const MetricSpec& metric, const HeisenbergSector& s) {
  // Derived from the (V1) equation and, for h_rho, from
  // ((1 + rho^2) V1 + rho V2) f + (V2 + rho V1) g = 0, solved for f' and g'.
  const QPiC two_pi = QPiC::pi(1) * gauss(2);
  const QPiC rho = metric.rho_value();
  const QPiC D = gauss(1) + rho * rho;
  const QPiC n = gauss(s.n), m = gauss(s.m), k = gauss(s.k);
  const QPiC a = q_of(p.a);
  const QPiC inv_b = p.b_inverse();
  const QPiC two_d_i = q_of(Rational(2) * p.d) * kI;  // b i / (4 pi)
  ExactSectorSystem sys;
  sys.denom = D;
  sys.A_num = {QPiC(), two_pi * n, D * two_pi * n, QPiC()};
  sys.B_num = {
      two_pi * (D * k + gauss(2) * rho * n * kI * inv_b),
      two_pi * (m - n * (a - kI) * inv_b + gauss(2) * rho * k - rho * two_d_i),
      D * two_pi * (m - n * (a + kI) * inv_b),
      D * two_pi * (two_d_i - k),
  };
  return sys;
}

PencilSystem sector_system_float(const FloatAcs& p, double rho, const HeisenbergSector& s) {
  const double pi = std::numbers::pi;
  const cd I(0, 1);
  const double D = 1 + rho * rho;
  const double b = 8 * pi * p.d;
  const double n = static_cast<double>(s.n), m = static_cast<double>(s.m), k = static_cast<double>(s.k);
  PencilSystem sys;
  sys.A << 0, 2 * pi * n / D, 2 * pi * n, 0;
  sys.B << 2 * pi * (k + 2.0 * rho * n * I / (D * b)),
      2 * pi * (m - n * (p.a - I) / b + 2 * rho * k - rho * b * I / (4 * pi)) / D,  //
      2 * pi * (m - n * (p.a + I) / b),  //
      2 * pi * (b * I / (4 * pi) - k);
  return sys;
}

SectorCondition heisenberg_sector_condition(const AcsParams& p, const MetricSpec& metric, const HeisenbergSector& s) {
  // With A~ = D A and B~ = D B, the frame-free numerator of kappa is
  //   T~ = tr(A~B~A~B~) - 4 pi^2 n^2 D tr(B~^2),
  // and kappa = -T~ / (64 pi^3 |n|^3 D^(5/2)).
  ExactSectorSystem sys = sector_system(p, metric, s);
  auto widen = [](std::array<QPiC, 4>& m) {
    for (auto& e : m) e = e.with_range(kWideRange);
  };
  widen(sys.A_num);
  widen(sys.B_num);
  const QPiC D = sys.denom.with_range(kWideRange);
  auto mul = [](const std::array<QPiC, 4>& x, const std::array<QPiC, 4>& y) {
    return std::array<QPiC, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                               x[2] * y[1] + x[3] * y[3]};
  };
  const auto AB = mul(sys.A_num, sys.B_num);
  const auto ABAB = mul(AB, AB);
  const auto BB = mul(sys.B_num, sys.B_num);
  const QPiC n2 = gauss(s.n * s.n);
  const QPiC T = (ABAB[0] + ABAB[3]) - QPiC::pi(2, kWideRange) * gauss(4) * n2 * D * (BB[0] + BB[3]);
  const long long an = std::llabs(s.n);

  SectorCondition out;
  out.approx = pencil_invariant(sector_system(p, metric, s).to_float());
  if (metric.is_standard()) {
    const QPiC scale = QPiC::monomial(GaussRational(Rational(-1, 64 * an * an * an)), -3, kWideRange);
    out.value = (T * scale).with_range(ExponentRange{});
    out.denom = gauss(1);
    if (auto u = qpi_in_discrete_set(out.value, DiscreteSet::NegInt)) out.kindex = static_cast<long long>(-*u);
    return out;
  }
  out.squared = true;
  out.value = T * T;
  QPiC D5 = gauss(1).with_range(kWideRange);
  for (int i = 0; i < 5; ++i) D5 *= D;
  out.denom = QPiC::monomial(GaussRational(Rational(4096) * Rational(an * an * an) * Rational(an * an * an)), 6, kWideRange) * D5;
  // kappa^2 is rational exactly when the two sides are proportional.
  if (auto c = out.value.ratio_to(out.denom); c && c->is_real() && c->re.sign() > 0 && c->re.is_integer()) {
    const BigInt sq = c->re.num();
    if (is_perfect_square(sq) && out.approx.real() < 0) out.kindex = static_cast<long long>(isqrt(sq));
  }
  return out;
}

std::array<QPiC, 4> zero_sector_matrix(const AcsParams& p, const MetricSpec& metric, const ZeroSector& s) {
  const QPiC k = gauss(s.k), l = gauss(s.l), m = gauss(s.m);
  const QPiC two_d_i = q_of(Rational(2) * p.d) * kI;
  const QPiC rho = metric.rho_value();
  const QPiC D = gauss(1) + rho * rho;
  const QPiC k_minus_il = k - kI * l;
  return {-m, k + kI * l - two_d_i, D * k_minus_il + rho * m, m + rho * k_minus_il};
}

}  // namespace kth
