#include "kth/exact/gauss.hpp"

#include <utility>

#include <stdexcept>

namespace kth {

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero Gaussian rational");
  const Rational n = norm();
  return {re / n, -im / n};
}

std::string GaussRational::str() const {
  if (im.is_zero()) return re.str();
  const std::string imag = (im == Rational(1)) ? "i" : (im == Rational(-1)) ? "-i" : im.str() + "i";
  if (re.is_zero()) return imag;
  return re.str() + (im.sign() > 0 ? "+" : "") + imag;
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}
GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}
GaussRational& GaussRational::operator/=(const GaussRational& o) { return *this *= o.inverse(); }

std::vector<std::vector<GaussRational>> nullspace(std::vector<std::vector<GaussRational>> m, std::size_t cols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const GaussRational inv = m[r][c].inverse();
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const GaussRational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<GaussRational>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussRational> v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<std::size_t>(pivot_col[i])] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace kth
