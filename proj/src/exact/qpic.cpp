#include "kth/exact/qpic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kth {

namespace {

ExponentRange merge(ExponentRange a, ExponentRange b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace

QPiC::QPiC(GaussRational c, ExponentRange range) : range_(range) {
  if (!c.is_zero()) terms_.emplace_back(0, std::move(c));
  check_range();
}

QPiC QPiC::monomial(GaussRational c, int exponent, ExponentRange range) {
  QPiC q(range);
  if (!c.is_zero()) q.terms_.emplace_back(exponent, std::move(c));
  q.check_range();
  return q;
}

QPiC QPiC::with_range(ExponentRange range) const {
  QPiC q = *this;
  q.range_ = range;
  q.check_range();
  return q;
}

void QPiC::check_range() const {
  for (const auto& [e, c] : terms_) {
    if (!range_.contains(e)) {
      throw ExponentOverflow("pi exponent " + std::to_string(e) + " outside [" +
                             std::to_string(range_.lo) + ", " + std::to_string(range_.hi) + "]");
    }
  }
}

GaussRational QPiC::coeff(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return {};
}

int QPiC::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("min_exponent of zero");
  return terms_.front().first;
}

int QPiC::max_exponent() const {
  if (terms_.empty()) throw std::domain_error("max_exponent of zero");
  return terms_.back().first;
}

QPiC QPiC::conj() const {
  QPiC q = *this;
  for (auto& t : q.terms_) t.second = t.second.conj();
  return q;
}

QPiC QPiC::real_part() const {
  QPiC q(range_);
  for (const auto& [e, c] : terms_)
    if (!c.re.is_zero()) q.terms_.emplace_back(e, GaussRational(c.re));
  return q;
}

QPiC QPiC::imag_part() const {
  QPiC q(range_);
  for (const auto& [e, c] : terms_)
    if (!c.im.is_zero()) q.terms_.emplace_back(e, GaussRational(c.im));
  return q;
}

QPiC QPiC::inverse() const {
  if (terms_.size() != 1) throw std::domain_error("only nonzero monomials are invertible in Q(i)[pi, 1/pi]");
  return monomial(terms_.front().second.inverse(), -terms_.front().first, range_);
}

std::complex<double> QPiC::eval(double pi_value) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c.to_complex() * std::pow(pi_value, e);
  return sum;
}

std::string QPiC::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (e != 0) os << "*pi^" << e;
  }
  return os.str();
}

std::optional<GaussRational> QPiC::ratio_to(const QPiC& other) const {
  if (other.is_zero()) throw std::domain_error("ratio_to a zero QPiC");
  if (is_zero()) return GaussRational{};
  if (terms_.size() != other.terms_.size()) return std::nullopt;
  const GaussRational c = terms_.front().second / other.terms_.front().second;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].first != other.terms_[i].first) return std::nullopt;
    if (!(terms_[i].second == c * other.terms_[i].second)) return std::nullopt;
  }
  return c;
}

QPiC& QPiC::operator+=(const QPiC& o) {
  range_ = merge(range_, o.range_);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      GaussRational s = a->second + b->second;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

QPiC& QPiC::operator-=(const QPiC& o) { return *this += -o; }

QPiC QPiC::operator-() const {
  QPiC q = *this;
  for (auto& t : q.terms_) t.second = -t.second;
  return q;
}

QPiC operator*(const QPiC& a, const QPiC& b) {
  QPiC out(merge(a.range_, b.range_));
  if (a.is_zero() || b.is_zero()) return out;
  const int lo = a.terms_.front().first + b.terms_.front().first;
  const int hi = a.terms_.back().first + b.terms_.back().first;
  std::vector<GaussRational> acc(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) acc[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
  for (int e = lo; e <= hi; ++e) {
    auto& c = acc[static_cast<std::size_t>(e - lo)];
    if (!c.is_zero()) out.terms_.emplace_back(e, std::move(c));
  }
  out.check_range();
  return out;
}

QPiC& QPiC::operator*=(const QPiC& o) { return *this = *this * o; }

QPiC qpi_arith(const QPiC& x, const QPiC& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Conj: return x.conj();
  }
  throw std::invalid_argument("unknown ArithOp");
}

QPiClass qpi_classify(const QPiC& x) {
  if (x.is_zero()) return {QPiClass::Kind::RationalConstant, {}};
  if (x.terms().size() == 1 && x.terms().front().first == 0)
    return {QPiClass::Kind::RationalConstant, x.terms().front().second};
  return {QPiClass::Kind::Nonconstant, {}};
}

std::optional<BigInt> qpi_in_discrete_set(const QPiC& x, DiscreteSet set) {
  if (!x.is_monomial()) return std::nullopt;
  const auto& [e, c] = x.terms().front();
  const int want_exp = set == DiscreteSet::FourPiNegInt ? 1 : 0;
  if (e != want_exp || !c.is_real()) return std::nullopt;
  const Rational scaled = set == DiscreteSet::NegInt ? c.re : c.re / Rational(4);
  if (!scaled.is_integer() || scaled.sign() >= 0) return std::nullopt;
  return scaled.num();
}

}  // namespace kth
