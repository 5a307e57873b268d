#include "kth/io/json.hpp"

#include <stdexcept>

namespace kth {

json to_json(const Rational& r) { return r.str(); }

json to_json(const GaussRational& z) { return json{{"re", z.re.str()}, {"im", z.im.str()}}; }

json to_json(const QPiC& x) {
  json arr = json::array();
  for (const auto& [e, c] : x.terms()) arr.push_back({{"exp", e}, {"re", c.re.str()}, {"im", c.im.str()}});
  return arr;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a \"p/q\" string, got " + j.dump());
}

QPiC qpic_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("QPiC must be a JSON array");
  QPiC out(kWideRange);
  for (const auto& t : j) {
    out += QPiC::monomial(GaussRational(rational_from_json(t.at("re")), rational_from_json(t.at("im"))),
                          t.at("exp").get<int>(), kWideRange);
  }
  return out;
}

json to_json(const CircleLatticeSet& s) {
  json pts = json::array();
  for (const auto& [l, m] : s.points) pts.push_back({l, m});
  return {{"d", s.d.str()}, {"points", pts}, {"count", s.count()}};
}

json to_json(const Mat2c& m) {
  json out = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

namespace {

json poly_json(const Poly<cd>& p) {
  json arr = json::array();
  for (const auto& z : p) arr.push_back({z.real(), z.imag()});
  return arr;
}

json sector_json(const ZeroSector& s) { return {{"k", s.k}, {"l", s.l}, {"m", s.m}, {"n", 0}}; }
json sector_json(const HeisenbergSector& s) { return {{"k", s.k}, {"m", s.m}, {"n", s.n}}; }

}  // namespace

json to_json(const SchwartzSolution& s) {
  return {{"lambda2", s.lambda2},
          {"mu", {s.mu.real(), s.mu.imag()}},
          {"polyF", poly_json(s.polyF)},
          {"polyG", poly_json(s.polyG)},
          {"P", to_json(s.frame.P)}};
}

json to_json(const HarmonicForm& f) {
  json comps = json::array();
  for (const auto& c : f.components) {
    if (const auto* t = std::get_if<TrigComponent>(&c)) {
      json coeffs = json::array();
      for (const auto& q : t->coeffs) coeffs.push_back(to_json(q));
      comps.push_back({{"kind", "trig"}, {"sector", sector_json(t->sector)}, {"coeffs", coeffs}});
    } else {
      const auto& w = std::get<WBComponent>(c);
      comps.push_back({{"kind", "weil_brezin"}, {"sector", sector_json(w.sector)}, {"schwartz", to_json(w.schwartz)}});
    }
  }
  return {{"degree", f.degree == FormDegree::Zero1 ? "(0,1)" : "(1,1)"}, {"components", comps}};
}

json to_json(const HarmonicForm& f, const ResidualReport& certificate) {
  json j = to_json(f);
  j["certificate"] = {{"residual", certificate.residual}, {"truncation", certificate.truncation}};
  return j;
}

json to_json(const HodgeDiamond& d) {
  json h = json::array(), prov = json::array();
  for (std::size_t p = 0; p < 3; ++p) {
    json hr = json::array(), pr = json::array();
    for (std::size_t q = 0; q < 3; ++q) {
      hr.push_back(d.h[p][q]);
      pr.push_back(to_string(d.provenance[p][q]));
    }
    h.push_back(hr);
    prov.push_back(pr);
  }
  return {{"params", {{"a", d.params.a.str()}, {"d", d.params.d.str()}}},
          {"metric", d.metric.str()},
          {"h", h},
          {"provenance", prov}};
}

namespace {

bool exact_number(const json& j) { return j.is_number_integer() || j.is_string(); }

bool exact_entry(const json& e) {
  if (e.is_array()) return e.size() == 2 && exact_number(e[0]) && exact_number(e[1]);
  return exact_number(e);
}

double float_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return Rational::parse(j.get<std::string>()).to_double();
  throw std::invalid_argument("matrix entry must be a number or a \"p/q\" string, got " + j.dump());
}

const json& matrix_rows(const json& m, const char* name) {
  if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() || m[1].size() != 2)
    throw std::invalid_argument(std::string("matrix ") + name + " must be 2x2");
  return m;
}

}  // namespace

std::variant<ExactPencilSystem, PencilSystem> pencil_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B"))
    throw std::invalid_argument("expected an object with keys \"A\" and \"B\"");
  const json& A = matrix_rows(j.at("A"), "A");
  const json& B = matrix_rows(j.at("B"), "B");
  bool exact = true;
  for (const json* m : {&A, &B})
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) exact = exact && exact_entry((*m)[r][c]);
  if (exact) {
    ExactPencilSystem sys;
    auto read = [](const json& e) {
      if (e.is_array()) return GaussRational(rational_from_json(e[0]), rational_from_json(e[1]));
      return GaussRational(rational_from_json(e));
    };
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        sys.A(r, c) = read(A[r][c]);
        sys.B(r, c) = read(B[r][c]);
      }
    return sys;
  }
  PencilSystem sys;
  auto read = [](const json& e) {
    if (e.is_array()) {
      if (e.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
      return cd(float_number(e[0]), float_number(e[1]));
    }
    return cd(float_number(e), 0);
  };
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      sys.A(r, c) = read(A[r][c]);
      sys.B(r, c) = read(B[r][c]);
    }
  return sys;
}

}  // namespace kth
