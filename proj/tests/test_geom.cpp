#include <doctest.h>

#include <numbers>
#include <numeric>
#include <random>

#include "kth/geom/forms.hpp"
#include "kth/lattice/circle.hpp"

using namespace kth;

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI(0, 1);

Rational random_rational(std::mt19937& rng, int lo, int hi, int maxden) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, maxden);
  return Rational(num(rng), den(rng));
}

Rational random_nonzero(std::mt19937& rng) {
  while (true) {
    const Rational r = random_rational(rng, -20, 20, 7);
    if (!r.is_zero()) return r;
  }
}

HarmonicForm trig_form(const ZeroSector& s, QPiC f, QPiC g) {
  return {FormDegree::Zero1, {TrigComponent{s, {std::move(f), std::move(g)}}}};
}

}  // namespace

TEST_CASE("acs parameters") {
  const AcsParams p(Rational(1, 2), Rational(5, 3));
  CHECK(p.c() * p.b() == QPiC(-(Rational(1, 4) + 1)));
  CHECK(p.b() * p.b_inverse() == QPiC(1));
  CHECK_THROWS_AS(AcsParams(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(MetricSpec::rho(0), std::invalid_argument);
  CHECK(MetricSpec::rho(Rational(1, 2)).str() == "rho:1/2");
  CHECK(MetricSpec::standard().str() == "standard");
}

TEST_CASE("heisenberg sectors enforce 0 <= m < |n|") {
  CHECK_THROWS(HeisenbergSector(0, 0, 0));
  CHECK_THROWS(HeisenbergSector(0, 2, 2));
  CHECK_THROWS(HeisenbergSector(0, -1, 3));
  CHECK_NOTHROW(HeisenbergSector(0, 2, -3));
  // |k| <= 1, |n| <= 2: 3 * (1 + 2) * 2
  CHECK(heisenberg_sectors(1, 2).size() == 18);
}

TEST_CASE("frame duality at random points") {
  std::mt19937 rng(3);
  for (int param = 0; param < 20; ++param) {
    const AcsParams p(random_rational(rng, -10, 10, 5), random_nonzero(rng));
    for (int pt = 0; pt < 100; ++pt) {
      const auto pair = Frame::at(p, random_rational(rng, -50, 50, 9)).pairing();
      CHECK(pair[0][0] == QPiC(1));
      CHECK(pair[0][1] == QPiC());
      CHECK(pair[1][0] == QPiC());
      CHECK(pair[1][1] == QPiC(1));
    }
  }
}

TEST_CASE("structure scalar is b / 4") {
  const AcsParams p(0, Rational(5, 2));
  CHECK(Frame::at(p, 0).structure_scalar == QPiC::monomial(GaussRational(Rational(5)), 1));
}

TEST_CASE("standard sector system for (0, 0, 1), a = 0, d = 1") {
  const PencilSystem sys = sector_system(AcsParams(0, 1), MetricSpec::standard(), {0, 0, 1}).to_float();
  Mat2c A, B;
  A << 0, 2 * kPi, 2 * kPi, 0;
  B << 0, 2 * kPi * kI / (8 * kPi), -2 * kPi * kI / (8 * kPi), 2 * kPi * 2.0 * kI;
  CHECK((sys.A - A).norm() < 1e-12);
  CHECK((sys.B - B).norm() < 1e-12);
}

TEST_CASE("rho sector system scales the upper coupling by 1 / (1 + rho^2)") {
  const MetricSpec metric = MetricSpec::rho(1);
  const PencilSystem sys = sector_system(AcsParams(0, Rational(5, 3)), metric, {0, 0, 1}).to_float();
  CHECK(std::abs(sys.A(0, 1) - 2 * kPi / (1 + kPi * kPi)) < 1e-12);
  CHECK(std::abs(sys.A(1, 0) - 2 * kPi) < 1e-12);
}

TEST_CASE("exact and float sector systems agree") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const AcsParams p(random_rational(rng, -5, 5, 3), random_nonzero(rng));
    const MetricSpec metric = trial % 2 ? MetricSpec::rho(random_nonzero(rng)) : MetricSpec::standard();
    for (const auto& s : heisenberg_sectors(2, 2)) {
      const PencilSystem ex = sector_system(p, metric, s).to_float();
      const PencilSystem fl = sector_system_float({p.a.to_double(), p.d.to_double()}, metric.rho_float(), s);
      CHECK((ex.A - fl.A).norm() <= 1e-12 * (1 + ex.A.norm()));
      CHECK((ex.B - fl.B).norm() <= 1e-12 * (1 + ex.B.norm()));
    }
  }
}

TEST_CASE("standard condition has the exact imaginary part -2 pi k d / |n|") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const AcsParams p(random_rational(rng, -5, 5, 4), random_nonzero(rng));
    for (const auto& s : heisenberg_sectors(3, 3)) {
      const SectorCondition c = heisenberg_sector_condition(p, MetricSpec::standard(), s);
      const Rational expected = Rational(-2 * s.k) * p.d / Rational(std::llabs(s.n));
      CHECK(c.value.imag_part() == QPiC::monomial(GaussRational(expected), 1));
      CHECK(std::abs(c.value.eval() - c.approx) <= 1e-9 * (1 + std::abs(c.approx)));
      CHECK_FALSE(c.kindex.has_value());
    }
  }
}

TEST_CASE("standard condition depends on |n| only") {
  const AcsParams p(Rational(2, 3), Rational(7, 4));
  for (long long k = -2; k <= 2; ++k)
    for (long long n = 1; n <= 3; ++n)
      for (long long m = 0; m < n; ++m) {
        const auto plus = heisenberg_sector_condition(p, MetricSpec::standard(), {k, m, n});
        const auto minus = heisenberg_sector_condition(p, MetricSpec::standard(), {k, m, -n});
        CHECK(plus.value == minus.value);
      }
}

TEST_CASE("k = 0 with rational d is never constant") {
  for (const Rational d : {Rational(1), Rational(5, 2), Rational(-3, 7)}) {
    const auto c = heisenberg_sector_condition(AcsParams(0, d), MetricSpec::standard(), {0, 0, 1});
    CHECK_FALSE(qpi_classify(c.value).is_constant());
    CHECK(c.value.coeff(-1) == GaussRational(Rational(1) / (Rational(64) * d * d)));
  }
}

TEST_CASE("rho condition is never the square of a negative integer") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const AcsParams p(random_rational(rng, -4, 4, 3), random_nonzero(rng));
    const MetricSpec metric = MetricSpec::rho(random_nonzero(rng));
    for (const auto& s : heisenberg_sectors(1, 2)) {
      const auto c = heisenberg_sector_condition(p, metric, s);
      CHECK(c.squared);
      CHECK_FALSE(c.kindex.has_value());
      CHECK_FALSE(c.value.ratio_to(c.denom).has_value());
      const cd kappa2 = c.value.eval() / c.denom.eval();
      CHECK(std::abs(kappa2 - c.approx * c.approx) <= 1e-8 * (1 + std::abs(kappa2)));
    }
  }
}

TEST_CASE("zero sector solutions, standard metric") {
  CHECK(zero_sector_solutions(AcsParams(0, Rational(5, 2)), MetricSpec::standard()).size() == 6);
  CHECK(zero_sector_solutions(AcsParams(0, Rational(1, 3)), MetricSpec::standard()).size() == 1);
  for (long long q = 1; q <= 5; ++q)
    for (long long pn = 1; pn <= 40; ++pn) {
      if (std::gcd(pn, q) != 1) continue;
      const Rational d(pn, q);
      CHECK(zero_sector_solutions(AcsParams(0, d), MetricSpec::standard()).size() ==
            lattice_points_on_circle(d).count());
    }
}

TEST_CASE("zero sector solutions, rho metric") {
  CHECK(zero_sector_solutions(AcsParams(0, Rational(5, 3)), MetricSpec::rho(1)).size() == 1);
  // 2d integral admits one extra n = 0 solution
  CHECK(zero_sector_solutions(AcsParams(0, Rational(5, 2)), MetricSpec::rho(1)).size() == 2);
}

TEST_CASE("zero sector solutions solve the exact n = 0 system") {
  for (const MetricSpec metric : {MetricSpec::standard(), MetricSpec::rho(Rational(1, 3))}) {
    const AcsParams p(1, Rational(5, 2));
    for (const auto& form : zero_sector_solutions(p, metric))
      for (const auto& comp : form.components) {
        const auto& t = std::get<TrigComponent>(comp);
        const auto M = zero_sector_matrix(p, metric, t.sector);
        CHECK((M[0] * t.coeffs[0] + M[1] * t.coeffs[1]).is_zero());
        CHECK((M[2] * t.coeffs[0] + M[3] * t.coeffs[1]).is_zero());
      }
  }
}

TEST_CASE("pde residual of trig forms") {
  const AcsParams p(0, Rational(5, 2));
  const auto rp = residual_params(p, MetricSpec::standard());
  const auto grid = half_offset_grid(5);
  CHECK(grid.size() == 625);
  CHECK(pde_residual(trig_form({0, 0, 0}, 1, 0), rp, grid).residual == 0);
  // (l, m) = (1, 2) lies on (l - 5/2)^2 + m^2 = 25/4
  const auto on = trig_form({0, 1, 2}, 2, QPiC::i());
  CHECK(pde_residual(on, rp, grid).residual <= 1e-10);
  const auto off = trig_form({0, 1, 1}, 1, QPiC::i());
  CHECK(pde_residual(off, rp, grid).residual > 1e-2);
  for (const auto& form : zero_sector_solutions(p, MetricSpec::standard()))
    CHECK(pde_residual(form, rp, grid).residual <= 1e-8);
}

TEST_CASE("serial and parallel residuals agree") {
  const AcsParams p(0, Rational(5, 2));
  const auto rp = residual_params(p, MetricSpec::standard());
  const auto grid = half_offset_grid(5);
  const auto off = trig_form({0, 1, 1}, 1, QPiC::i());
  CHECK(pde_residual(off, rp, grid).residual == pde_residual_serial(off, rp, grid).residual);
}

TEST_CASE("Weil-Brezin sums") {
  const auto gauss = [](double x) { return cd(std::exp(-kPi * x * x)); };
  const auto zero = [](double) { return cd(0); };
  std::mt19937 rng(44);
  std::uniform_real_distribution<double> u(0, 1);
  CHECK(weil_brezin_eval(zero, {1, 0, 1}, {0.3, 0.2, 0.1, 0.4}).value == cd(0));

  const HeisenbergSector k0(0, 0, 1);
  const Point4 a{0.1, 0.4, 0.7, 0.2}, b{0.9, 0.4, 0.7, 0.2};
  CHECK(std::abs(weil_brezin_eval(gauss, k0, a).value - weil_brezin_eval(gauss, k0, b).value) < 1e-14);

  for (long long n : {-2LL, -1LL, 1LL, 2LL})
    for (long long m = 0; m < std::llabs(n); ++m)
      for (long long k : {-1LL, 0LL, 2LL}) {
        const HeisenbergSector s(k, m, n);
        for (int trial = 0; trial < 100; ++trial) {
          const Point4 pt{u(rng), u(rng), u(rng), u(rng)};
          const WBValue base = weil_brezin_eval(gauss, s, pt);
          CHECK(base.bound < 1e-12);
          const WBValue t1 = weil_brezin_eval(gauss, s, {pt.t + 1, pt.x, pt.y, pt.z});
          const WBValue y1 = weil_brezin_eval(gauss, s, {pt.t, pt.x, pt.y + 1, pt.z});
          const WBValue z1 = weil_brezin_eval(gauss, s, {pt.t, pt.x, pt.y, pt.z + 1});
          const WBValue x1 = weil_brezin_eval(gauss, s, {pt.t, pt.x + 1, pt.y, pt.z + pt.y});
          CHECK(std::abs(t1.value - base.value) <= base.bound + t1.bound);
          CHECK(std::abs(y1.value - base.value) <= base.bound + y1.bound);
          CHECK(std::abs(z1.value - base.value) <= base.bound + z1.bound);
          CHECK(std::abs(x1.value - base.value) <= base.bound + x1.bound);
        }
      }
}
