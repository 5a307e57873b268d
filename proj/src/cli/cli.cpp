#include "kth/cli/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kth/hodge/engine.hpp"
#include "kth/io/json.hpp"
#include "kth/lattice/circle.hpp"
#include "kth/ode/matching.hpp"
#include "kth/oracle/spectral.hpp"

namespace kth::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Rational parse_rational(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

// Left-aligned columns separated by two spaces.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
      }
      out << line << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

// Flags shared by the subcommands that take a structure and a metric.
struct StructureFlags {
  std::string a = "0";
  std::string d;
  std::string metric = "standard";
  std::string r = "1";

  void attach(CLI::App* sub, bool with_metric) {
    sub->add_option("--a", a, "structure parameter a, exact rational p/q");
    auto* d_opt = sub->add_option("--d", d, "d = b / (8 pi), exact rational p/q");
    auto* alias = sub->add_option("--b-over-8pi", d, "alias for --d");
    d_opt->excludes(alias);
    if (with_metric) {
      sub->add_option("--metric", metric, "standard or rho")->check(CLI::IsMember({"standard", "rho"}));
      sub->add_option("--r", r, "rho = r pi for the rho metric, exact rational");
    }
  }

  AcsParams params() const {
    if (d.empty()) throw InputError("--d is required");
    const Rational dv = parse_rational(d, "--d");
    if (dv.is_zero()) throw InputError("--d must be nonzero");
    return AcsParams(parse_rational(a, "--a"), dv);
  }

  MetricSpec metric_spec() const {
    if (metric == "standard") return MetricSpec::standard();
    const Rational rv = parse_rational(r, "--r");
    if (rv.is_zero()) throw InputError("--r must be nonzero");
    return MetricSpec::rho(rv);
  }
};

std::string verdict_name(const Solvability& s) {
  if (std::holds_alternative<Solvable>(s)) return "Solvable";
  if (std::holds_alternative<NotSolvable>(s)) return "NotSolvable";
  return "NotApplicable";
}

int cmd_diamond(const StructureFlags& f, bool table, std::ostream& out) {
  const HodgeDiamond dia = hodge_diamond(f.params(), f.metric_spec());
  if (table)
    out << dia.ascii();
  else
    out << to_json(dia).dump(2) << "\n";
  return kExitOk;
}

int cmd_lattice(const StructureFlags& f, bool table, std::ostream& out, std::ostream& err) {
  const Rational d = f.params().d;
  const CircleLatticeSet set = lattice_points_on_circle(d);
  const auto formula = count_by_formula(d);
  const BigInt* fc = std::get_if<BigInt>(&formula);
  json j = to_json(set);
  j["formula"] = fc ? json(static_cast<long long>(*fc)) : json(nullptr);
  if (table) {
    out << "d = " << d.str() << "\ncount = " << set.count() << "\nformula = " << (fc ? fc->str() : "unsupported")
        << "\n";
    Table t({"l", "m"});
    for (const auto& [l, m] : set.points) t.add({std::to_string(l), std::to_string(m)});
    t.print(out);
  } else {
    out << j.dump(2) << "\n";
  }
  if (fc && *fc != BigInt(set.count())) {
    err << "formula count " << fc->str() << " differs from enumeration " << set.count() << "\n";
    return kExitDisagreement;
  }
  return kExitOk;
}

int cmd_ode_check(const std::string& path, double tol, bool table, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json input;
  try {
    input = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  std::variant<ExactPencilSystem, PencilSystem> parsed;
  try {
    parsed = pencil_from_json(input);
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed system: ") + e.what());
  }

  Solvability verdict;
  PencilSystem sys;
  std::string route;
  if (const auto* ex = std::get_if<ExactPencilSystem>(&parsed)) {
    verdict = l2_solvability(*ex);
    sys = ex->to_float();
    route = "exact";
  } else {
    sys = std::get<PencilSystem>(parsed);
    verdict = l2_solvability(sys, tol);
    route = "float";
  }

  json j = {{"criterion", verdict_name(verdict)}, {"path", route}};
  int code = kExitOk;
  if (const auto* na = std::get_if<NotApplicable>(&verdict)) {
    j["reason"] = na->reason;
  } else {
    if (const auto* s = std::get_if<Solvable>(&verdict)) j["kindex"] = s->kindex;
    const MatchResult m = matching_oracle(sys);
    j["oracle_defect"] = m.defect;
    j["oracle_l2"] = m.l2_exists;
    if (m.l2_exists != std::holds_alternative<Solvable>(verdict)) {
      err << "criterion and matching oracle disagree\n";
      code = kExitDisagreement;
    }
  }
  if (table) {
    for (auto it = j.begin(); it != j.end(); ++it)
      out << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return code;
}

int cmd_schinzel(long long n, bool table, std::ostream& out, std::ostream& err) {
  if (n <= 0) throw InputError("--n must be a positive integer");
  const auto d = schinzel_d_for_target(n);
  json j = {{"n", n}, {"reachable", d.has_value()}};
  int code = kExitOk;
  if (d) {
    const std::size_t count = lattice_points_on_circle(*d).count();
    j["d"] = d->str();
    j["count"] = count;
    if (count != static_cast<std::size_t>(n)) {
      err << "circle at d = " << d->str() << " has " << count << " points, expected " << n << "\n";
      code = kExitDisagreement;
    }
  }
  if (table) {
    out << "n = " << n << "\n";
    if (d)
      out << "d = " << d->str() << "\ncount = " << j["count"].get<std::size_t>() << "\n";
    else
      out << "unreachable (8 divides n)\n";
  } else {
    out << j.dump(2) << "\n";
  }
  return code;
}

int cmd_surd(long long n, long long u, const std::string& a, bool table, std::ostream& out) {
  if (n == 0) throw InputError("--n must be nonzero");
  if (u >= 0) throw InputError("--u must be a negative integer");
  const SurdCase c = solve_deq(n, u);
  const SurdH01 h = compute_h01_surd(c, parse_rational(a, "--a"));
  const bool unique = surd_sector_unique(c);
  if (table) {
    out << "d = " << sci(c.d) << "  (8 pi d^2 in Q(sqrt(" << c.discriminant.str() << ")))\n";
    out << "quartic residual = " << sci(c.residual) << "\n";
    out << "other sectors excluded = " << (unique ? "yes" : "no") << "\n";
    out << "h01 = " << h.count << "\n";
    Table t({"k", "m", "n", "kindex", "oracle_defect", "residual"});
    for (const auto& s : h.sectors)
      t.add({std::to_string(s.sector.k), std::to_string(s.sector.m), std::to_string(s.sector.n),
             std::to_string(s.kindex), sci(s.oracle_defect), sci(s.residual)});
    t.print(out);
  } else {
    json sectors = json::array();
    for (const auto& s : h.sectors)
      sectors.push_back({{"k", s.sector.k},
                         {"m", s.sector.m},
                         {"n", s.sector.n},
                         {"kindex", s.kindex},
                         {"oracle_defect", s.oracle_defect},
                         {"residual", s.residual}});
    out << json{{"n", n},
                {"u", u},
                {"d", c.d},
                {"discriminant", c.discriminant.str()},
                {"residual", c.residual},
                {"unique", unique},
                {"h01", h.count},
                {"sectors", sectors}}
               .dump(2)
        << "\n";
  }
  return kExitOk;
}

int cmd_ks_demo(const std::vector<long long>& Ks, const std::string& a, const std::string& r, bool as_json,
                std::ostream& out) {
  const Rational av = parse_rational(a, "--a");
  const Rational rv = parse_rational(r, "--r");
  if (rv.is_zero()) throw InputError("--r must be nonzero");
  for (long long K : Ks)
    if (K < 1 || K % 2 == 0) throw InputError("--K must be an odd positive integer");
  std::vector<KsRow> rows;
  for (long long K : Ks) rows.push_back(ks_demo(K, av, rv));
  if (as_json) {
    json j = json::array();
    for (const auto& row : rows)
      j.push_back({{"K", row.K}, {"d", row.d.str()}, {"standard", row.standard}, {"rho", row.rho}});
    out << j.dump(2) << "\n";
  } else {
    Table t({"K", "d", "standard", "rho"});
    for (const auto& row : rows)
      t.add({std::to_string(row.K), row.d.str(), std::to_string(row.standard), std::to_string(row.rho)});
    t.print(out);
  }
  return kExitOk;
}

Mat2c random_invertible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  while (true) {
    Mat2c q;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) q(i, j) = cd(u(rng), u(rng));
    if (std::abs(q.determinant()) > 0.5) return q;
  }
}

int cmd_verify(const StructureFlags& f, long long nmax, double tol, std::uint64_t seed, bool as_json,
               std::ostream& out, std::ostream& err) {
  if (nmax < 1) throw InputError("--nmax must be positive");
  const AcsParams p = f.params();
  const MetricSpec metric = f.metric_spec();
  const H01Result exact = compute_h01(p, metric);
  OracleOptions opt;
  opt.nmax = nmax;
  opt.tol = tol;
  const OracleH01Result oracle = oracle_h01(p, metric, opt);

  std::mt19937_64 rng(seed);
  bool all_agree = oracle.count == exact.count;
  Table t({"k", "m", "n", "criterion", "kindex", "oracle_dim", "sigma_min", "agree", "conjugated"});
  json sectors = json::array();
  for (const auto& rep : oracle.sectors) {
    const SectorCondition cond = heisenberg_sector_condition(p, metric, rep.sector);
    const PencilSystem sys = sector_system(p, metric, rep.sector).to_float();
    const Mat2c q = random_invertible(rng);
    const Mat2c qi = q.inverse();
    const Solvability moved = l2_solvability(PencilSystem{q * sys.A * qi, q * sys.B * qi});
    const bool conj_ok = std::holds_alternative<Solvable>(moved) == cond.kindex.has_value();
    all_agree = all_agree && rep.agree && conj_ok;
    const std::string verdict = cond.kindex ? "Solvable" : "NotSolvable";
    const std::string kindex = cond.kindex ? std::to_string(*cond.kindex) : "-";
    t.add({std::to_string(rep.sector.k), std::to_string(rep.sector.m), std::to_string(rep.sector.n), verdict, kindex,
           std::to_string(rep.oracle_dim), sci(rep.sigma_min), rep.agree ? "yes" : "NO", conj_ok ? "yes" : "NO"});
    json s = {{"k", rep.sector.k},   {"m", rep.sector.m},           {"n", rep.sector.n},
              {"criterion", verdict}, {"oracle_dim", rep.oracle_dim}, {"sigma_min", rep.sigma_min},
              {"agree", rep.agree},   {"conjugation_agree", conj_ok}};
    if (cond.kindex) s["kindex"] = *cond.kindex;
    sectors.push_back(s);
  }

  if (as_json) {
    out << json{{"params", {{"a", p.a.str()}, {"d", p.d.str()}}},
                {"metric", metric.str()},
                {"h01_exact", exact.count},
                {"h01_oracle", oracle.count},
                {"zero_sector_oracle", oracle.zero_sector_count},
                {"sectors", sectors},
                {"warnings", oracle.warnings},
                {"agree", all_agree}}
               .dump(2)
        << "\n";
  } else {
    out << "d = " << p.d.str() << "  a = " << p.a.str() << "  metric = " << metric.str() << "\n";
    out << "h01 exact = " << exact.count << "  oracle = " << oracle.count << " (zero sectors "
        << oracle.zero_sector_count << ", |n| <= " << nmax << ": " << oracle.heisenberg_count << ")\n";
    t.print(out);
    for (const auto& w : oracle.warnings) out << "warning: " << w << "\n";
  }
  if (!all_agree) {
    err << "exact pipeline and oracle disagree\n";
    return kExitDisagreement;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"kthodge: sector-by-sector Hodge numbers for J_{a,b} on KT^4"};
  app.name("kthodge");
  app.require_subcommand(1);

  bool as_json = false, as_table = false;
  double tol = -1;
  auto output_flags = [&](CLI::App* sub) {
    auto* j = sub->add_flag("--json", as_json, "JSON output");
    auto* t = sub->add_flag("--table", as_table, "table output");
    j->excludes(t);
  };

  StructureFlags diamond_f;
  auto* diamond = app.add_subcommand("diamond", "Hodge diamond (JSON unless --table)");
  diamond_f.attach(diamond, true);
  output_flags(diamond);

  StructureFlags lattice_f;
  auto* lattice = app.add_subcommand("lattice-count", "integer points on the circle (l-d)^2 + m^2 = d^2");
  lattice_f.attach(lattice, false);
  output_flags(lattice);

  std::string ode_file;
  auto* ode = app.add_subcommand("ode-check", "L2 criterion and matching oracle for y' = (Ax+B)y");
  ode->add_option("FILE", ode_file, "JSON file {\"A\": ..., \"B\": ...}")->required();
  ode->add_option("--tol", tol, "integer tolerance for the float criterion");
  output_flags(ode);

  long long schinzel_n = 0;
  auto* schinzel = app.add_subcommand("schinzel", "d whose circle has exactly n lattice points");
  schinzel->add_option("--n", schinzel_n, "target count")->required();
  output_flags(schinzel);

  long long surd_n = 0, surd_u = 0;
  std::string surd_a = "0";
  auto* surd = app.add_subcommand("surd", "h01 at the irrational d attached to (n, u)");
  surd->add_option("--n", surd_n, "nonzero sector index")->required();
  surd->add_option("--u", surd_u, "negative integer")->required();
  surd->add_option("--a", surd_a, "structure parameter a, exact rational");
  output_flags(surd);

  std::vector<long long> ks_K;
  std::string ks_a = "0", ks_r = "1";
  auto* ks = app.add_subcommand("ks-demo", "h01 for both metrics at d = 5^((K-1)/2)/3 (table unless --json)");
  ks->add_option("--K", ks_K, "odd K; repeatable, default 1 3 5 7 9");
  ks->add_option("--a", ks_a, "structure parameter a, exact rational");
  ks->add_option("--r", ks_r, "rho = r pi, exact rational");
  output_flags(ks);

  StructureFlags verify_f;
  long long verify_nmax = 3;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "per-sector comparison of the exact criterion and the FD oracle");
  verify_f.attach(verify, true);
  verify->add_option("--nmax", verify_nmax, "largest |n| scanned by the oracle");
  verify->add_option("--tol", tol, "relative singular-value threshold");
  verify->add_option("--seed", seed, "seed for the random conjugation checks");
  output_flags(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*diamond) return cmd_diamond(diamond_f, as_table, out);
    if (*lattice) return cmd_lattice(lattice_f, as_table, out, err);
    if (*ode) return cmd_ode_check(ode_file, tol > 0 ? tol : kIntegerTolerance, as_table, out, err);
    if (*schinzel) return cmd_schinzel(schinzel_n, as_table, out, err);
    if (*surd) return cmd_surd(surd_n, surd_u, surd_a, as_table, out);
    if (*ks) {
      if (ks_K.empty()) ks_K = {1, 3, 5, 7, 9};
      return cmd_ks_demo(ks_K, ks_a, ks_r, as_json, out);
    }
    if (*verify)
      return cmd_verify(verify_f, verify_nmax, tol > 0 ? tol : 1e-6, seed, as_json, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const OracleDisagreement& e) {
    err << "oracle disagreement: " << e.what() << "\n";
    return kExitDisagreement;
  } catch (const StepFailure& e) {
    err << "integrator failure: " << e.what() << "\n";
    return kExitDisagreement;
  }
  return kExitInput;
}

}  // namespace kth::cli
