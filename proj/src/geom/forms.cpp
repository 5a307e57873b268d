#include "kth/geom/forms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kth/lattice/circle.hpp"

namespace kth {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI(0, 1);

cd phase(double turns) {
  // exp(2 pi i turns) with the integer part removed first.
  const double frac = turns - std::floor(turns);
  return std::exp(2 * kPi * kI * frac);
}

// Null vector of a singular 2x2 QPiC matrix, scaled so that the lowest pi
// power of its first nonzero entry has coefficient 1.
std::array<QPiC, 2> null_vector(const std::array<QPiC, 4>& M) {
  std::array<QPiC, 2> v{M[1], -M[0]};
  if (v[0].is_zero() && v[1].is_zero()) v = {M[3], -M[2]};
  if (v[0].is_zero() && v[1].is_zero()) v = {QPiC(1), QPiC()};
  const QPiC& lead = v[0].is_zero() ? v[1] : v[0];
  const QPiC inv(lead.terms().front().second.inverse());
  return {v[0] * inv, v[1] * inv};
}

HarmonicForm trig_form(const ZeroSector& s, std::array<QPiC, 2> fg) {
  return {FormDegree::Zero1, {TrigComponent{s, {std::move(fg[0]), std::move(fg[1])}}}};
}

}  // namespace

std::vector<Point4> half_offset_grid(int per_axis) {
  std::vector<Point4> g;
  const double h = 1.0 / per_axis;
  for (int a = 0; a < per_axis; ++a)
    for (int b = 0; b < per_axis; ++b)
      for (int c = 0; c < per_axis; ++c)
        for (int e = 0; e < per_axis; ++e) g.push_back({(a + 0.5) * h, (b + 0.5) * h, (c + 0.5) * h, (e + 0.5) * h});
  return g;
}

std::vector<HarmonicForm> zero_sector_solutions(const AcsParams& p, const MetricSpec& metric) {
  std::vector<HarmonicForm> out;
  if (metric.is_standard()) {
    // The origin of the circle stands for the constant form.
    for (const auto& [l, m] : lattice_points_on_circle(p.d).points) {
      if (l == 0 && m == 0) {
        out.push_back(trig_form({0, 0, 0}, {QPiC(1), QPiC()}));
      } else {
        out.push_back(trig_form({0, l, m}, {QPiC(m), QPiC(GaussRational(Rational(0), Rational(l)))}));
      }
    }
    return out;
  }
  // With rho = r pi, the determinant of the n = 0 system is a polynomial in pi
  // of degree 2. Its pi^2 coefficient -r^2 (k + i l - 2 d i)(k - i l) forces
  // k = l = 0 or (k, l) = (0, 2d); its pi^1 coefficient -2 r m (k - d i) then
  // forces m = 0. Both candidates are re-checked exactly below.
  std::vector<ZeroSector> candidates{{0, 0, 0}};
  const Rational two_d = Rational(2) * p.d;
  if (two_d.is_integer()) candidates.push_back({0, static_cast<long long>(two_d.num()), 0});
  for (const auto& s : candidates) {
    const auto M = zero_sector_matrix(p, metric, s);
    if (!(M[0] * M[3] - M[1] * M[2]).is_zero()) throw std::logic_error("rho zero-sector candidate is not a solution");
    out.push_back(trig_form(s, null_vector(M)));
  }
  return out;
}

WBValue weil_brezin_eval(const std::function<cd(double)>& f, const HeisenbergSector& s, const Point4& pt, int xi_cut) {
  if (xi_cut < 1) throw std::invalid_argument("xi_cut must be >= 1");
  WBValue r;
  double magnitude = 0, max_turns = 0;
  auto term = [&](long long xi) {
    const double turns = static_cast<double>(s.k) * pt.t + static_cast<double>(s.m + s.n * xi) * pt.y +
                         static_cast<double>(s.n) * pt.z;
    max_turns = std::max(max_turns, std::abs(turns));
    return f(pt.x + static_cast<double>(xi)) * phase(turns);
  };
  for (long long xi = -xi_cut; xi <= xi_cut; ++xi) {
    const cd t = term(xi);
    r.value += t;
    magnitude += std::abs(t);
  }
  // Tail: the next terms on each side, which dominate the rest of a
  // super-exponentially decaying series.
  double tail = 0;
  for (long long xi = xi_cut + 1; xi <= xi_cut + 8; ++xi) tail += std::abs(term(xi)) + std::abs(term(-xi));
  const double eps = std::numeric_limits<double>::epsilon();
  r.bound = tail + 4 * eps * magnitude * (1 + 2 * kPi * max_turns);
  return r;
}

ResidualParams residual_params(const AcsParams& p, const MetricSpec& metric) {
  return {p.a.to_double(), p.d.to_double(), metric.rho_float()};
}

namespace {

struct Lhs {
  std::array<cd, 4> eq{};
  double tail = 0;
};

// Operators on a term h(X) e^{2 pi i (k t + (m + n xi) y + n z)} with X = x + xi,
// given as multipliers of h and h':
//   V1 -> pi i k h - (i/2) h',  conj(V1) -> pi i k h + (i/2) h',
//   V2 -> pi i (m + n X - n (a - i)/b) h,  conj(V2) -> with a + i.
// For n = 0 with exp(2 pi i l x) the x-derivative is 2 pi i l.
void add_trig(const TrigComponent& c, FormDegree deg, const ResidualParams& p, const Point4& pt, Lhs& out) {
  const auto& s = c.sector;
  const cd ph = phase(static_cast<double>(s.k) * pt.t + static_cast<double>(s.l) * pt.x + static_cast<double>(s.m) * pt.y);
  const double k = static_cast<double>(s.k), l = static_cast<double>(s.l), m = static_cast<double>(s.m);
  const cd v1 = kPi * kI * (k - kI * l), v1b = kPi * kI * (k + kI * l);
  const cd v2 = kPi * kI * m, v2b = v2;
  const double b4 = 2 * kPi * p.d;
  const double rho = p.rho;
  std::vector<cd> f;
  for (const auto& q : c.coeffs) f.push_back(q.eval() * ph);
  if (deg == FormDegree::Zero1) {
    out.eq[0] += -v2b * f[0] + v1b * f[1] + b4 * f[1];
    out.eq[1] += ((1 + rho * rho) * v1 + rho * v2) * f[0] + (v2 + rho * v1) * f[1];
    return;
  }
  if (rho != 0) throw std::invalid_argument("(1,1) residual is implemented for the standard metric only");
  out.eq[0] += v2b * f[0] - v1b * f[1] - b4 * (f[1] + f[2]);
  out.eq[1] += v2b * f[2] - v1b * f[3];
  out.eq[2] += v2 * f[3] + v1 * f[2] + b4 * (f[1] + f[2]);
  out.eq[3] += v2 * f[1] + v1 * f[0];
}

void add_wb(const WBComponent& c, FormDegree deg, const ResidualParams& p, const Point4& pt, int xi_cut, Lhs& out) {
  if (deg != FormDegree::Zero1) throw std::invalid_argument("Weil-Brezin components are (0,1) only");
  const auto& s = c.sector;
  const double k = static_cast<double>(s.k), m = static_cast<double>(s.m), n = static_cast<double>(s.n);
  const double b = 8 * kPi * p.d;
  const double rho = p.rho;
  const double b4 = 2 * kPi * p.d;
  auto term = [&](long long xi, std::array<cd, 2>& eq) {
    const double X = pt.x + static_cast<double>(xi);
    const cd ph = phase(k * pt.t + (m + n * static_cast<double>(xi)) * pt.y + n * pt.z);
    const Vec2c y = c.schwartz.eval(X);
    const Vec2c dy = c.schwartz.derivative(X);
    auto V1 = [&](int i) { return (kPi * kI * k * y(i) - 0.5 * kI * dy(i)) * ph; };
    auto V1b = [&](int i) { return (kPi * kI * k * y(i) + 0.5 * kI * dy(i)) * ph; };
    auto V2 = [&](int i) { return kPi * kI * (m + n * X - n * (p.a - kI) / b) * y(i) * ph; };
    auto V2b = [&](int i) { return kPi * kI * (m + n * X - n * (p.a + kI) / b) * y(i) * ph; };
    eq[0] = -V2b(0) + V1b(1) + b4 * y(1) * ph;
    eq[1] = (1 + rho * rho) * V1(0) + rho * V2(0) + V2(1) + rho * V1(1);
    return std::abs(y(0)) + std::abs(y(1));
  };
  std::array<cd, 2> eq;
  for (long long xi = -xi_cut; xi <= xi_cut; ++xi) {
    term(xi, eq);
    out.eq[0] += eq[0];
    out.eq[1] += eq[1];
  }
  for (long long xi = xi_cut + 1; xi <= xi_cut + 8; ++xi) out.tail += term(xi, eq) + term(-xi, eq);
}

Lhs lhs_at(const HarmonicForm& form, const ResidualParams& p, const Point4& pt, int xi_cut) {
  Lhs acc;
  for (const auto& comp : form.components) {
    if (const auto* t = std::get_if<TrigComponent>(&comp)) {
      add_trig(*t, form.degree, p, pt, acc);
    } else {
      add_wb(std::get<WBComponent>(comp), form.degree, p, pt, xi_cut, acc);
    }
  }
  return acc;
}

double total(const Lhs& l) { return std::abs(l.eq[0]) + std::abs(l.eq[1]) + std::abs(l.eq[2]) + std::abs(l.eq[3]); }

}  // namespace

ResidualReport pde_residual_serial(const HarmonicForm& form, const ResidualParams& p, const std::vector<Point4>& grid,
                                   int xi_cut) {
  ResidualReport r;
  for (const auto& pt : grid) {
    const Lhs l = lhs_at(form, p, pt, xi_cut);
    r.residual = std::max(r.residual, total(l));
    r.truncation = std::max(r.truncation, l.tail);
  }
  return r;
}

ResidualReport pde_residual(const HarmonicForm& form, const ResidualParams& p, const std::vector<Point4>& grid,
                            int xi_cut) {
  // Validate once outside the parallel region so exceptions stay on this thread.
  if (!grid.empty()) (void)lhs_at(form, p, grid.front(), xi_cut);
  double res = 0, trunc = 0;
  const long long n = static_cast<long long>(grid.size());
#pragma omp parallel for reduction(max : res, trunc) schedule(static)
  for (long long i = 0; i < n; ++i) {
    const Lhs l = lhs_at(form, p, grid[static_cast<std::size_t>(i)], xi_cut);
    res = std::max(res, total(l));
    trunc = std::max(trunc, l.tail);
  }
  return {res, trunc};
}

}  // namespace kth
