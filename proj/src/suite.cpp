#include "qsphere/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <functional>
#include <random>

#include "qsphere/chern.hpp"
#include "qsphere/clifford.hpp"
#include "qsphere/errors.hpp"

namespace qsphere {

namespace {

struct Outcome {
  bool passed = false;
  std::string exact;
  std::optional<double> value;
  std::string detail;
};

class Runner {
 public:
  void check(std::string id, std::string anchor, const std::function<Outcome()>& body) {
    CheckResult r{std::move(id), std::move(anchor), false, {}, std::nullopt, 0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = body();
      r.passed = o.passed;
      r.exact_value = std::move(o.exact);
      r.float_value = o.value;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.checks.push_back(std::move(r));
  }

  SuiteReport report;
};

Outcome verdict(bool ok, std::string exact = {}, std::string detail = {}) { return {ok, std::move(exact), std::nullopt, std::move(detail)}; }

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
  return out;
}

NCPoly s7(const char* text) { return parse_poly(text, presentation_s7q()); }
NCPoly y0() { return s7("q^4 (x1 x1* + x2 x2*)"); }
NCPoly y1() { return s7("-q x1 x3* + q x2 x4*"); }
NCPoly y2() { return s7("q x1 x4 + q^2 x2 x3"); }
QScalar qp(int e) { return QScalar::q_power(e); }

std::string label(double q0) {
  std::ostringstream out;
  out << q0;
  return out.str();
}

// The decomposition is shared by the bundle and index groups.
const DecompositionReport& decomposition(int n) {
  static std::map<int, DecompositionReport> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, check_decomposition(n)).first;
  return it->second;
}

NCPoly random_poly(const PresentationPtr& pres, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 3), gen(0, pres->generator_count() - 1), coeff(-3, 3), qexp(-2, 2);
  NCPoly out(pres);
  for (int t = 0; t < 3; ++t) {
    std::vector<Letter> letters(static_cast<std::size_t>(len(rng)));
    for (auto& g : letters) g = static_cast<Letter>(gen(rng));
    out += NCPoly::from_word(pres, Word::from_letters(letters), QScalar(coeff(rng)) * qp(qexp(rng)));
  }
  return out;
}

void algebra_checks(Runner& run, const RunConfig& cfg) {
  for (const auto& pres : {presentation_s7q(), presentation_suq2()}) {
    run.check("confluence." + pres->name(), "local confluence of the rewriting system", [&] {
      const ConfluenceReport r = check_local_confluence(*pres, cfg.degree_bound);
      return verdict(r.confluent(), std::to_string(r.overlaps_checked) + " overlaps, " + std::to_string(r.words_checked) + " words",
                     join(r.failures));
    });
  }
  const NCPoly Y0 = y0(), Y1 = y1(), Y2 = y2(), Y1s = star(Y1), Y2s = star(Y2);
  const NCPoly one(presentation_s7q(), QScalar(1));
  const std::vector<std::pair<std::string, NCPoly>> relations = {
      {"y1 y2 = q^4 y2 y1", Y1 * Y2 - qp(4) * (Y2 * Y1)},
      {"y1* y2 = y2 y1*", Y1s * Y2 - Y2 * Y1s},
      {"y0 y1 = q^-2 y1 y0", Y0 * Y1 - qp(-2) * (Y1 * Y0)},
      {"y0 y2 = q^4 y2 y0", Y0 * Y2 - qp(4) * (Y2 * Y0)},
      {"y1 y1* - q^4 y1* y1 = (q^-2 - 1) y0", Y1 * Y1s - qp(4) * (Y1s * Y1) - (qp(-2) - QScalar(1)) * Y0},
      {"y2 y2* - q^-4 y2* y2 = (1 - q^-4) y0^2", Y2 * Y2s - qp(-4) * (Y2s * Y2) - (QScalar(1) - qp(-4)) * (Y0 * Y0)},
      {"q^4 y1* y1 + q^-4 y2* y2 = y0 (1 - y0)", qp(4) * (Y1s * Y1) + qp(-4) * (Y2s * Y2) - Y0 * (one - Y0)},
      {"y1 y1* + y2 y2* = q^-2 y0 (1 - q^-2 y0)", Y1 * Y1s + Y2 * Y2s - qp(-2) * Y0 * (one - qp(-2) * Y0)},
  };
  for (const auto& [name, diff] : relations)
    run.check("s4.relation." + name, "quantum 4-sphere relations", [&] {
      return verdict(diff.is_zero(), "0", diff.is_zero() ? "" : "remainder " + diff.to_string());
    });
  run.check("algebra.associativity", "normal-form product is associative", [&] {
    std::mt19937_64 rng(cfg.seed);
    for (const auto& pres : {presentation_s7q(), presentation_suq2()})
      for (int t = 0; t < 20; ++t) {
        const NCPoly a = random_poly(pres, rng), b = random_poly(pres, rng), c = random_poly(pres, rng);
        if (!((a * b) * c == a * (b * c))) return verdict(false, {}, "seed " + std::to_string(cfg.seed));
      }
    return verdict(true, "40 random triples");
  });
}

void hopf_checks(Runner& run, const RunConfig& cfg) {
  run.check("hopf.t2_display", "spin-one corepresentation matrix", [] {
    const PolyMatrix want = parse_matrix(
        {{"alpha^2", "-sqrt(1+q^2) alpha gamma*", "q^2 gamma*^2"},
         {"sqrt(1+q^2) gamma alpha", "1-(1+q^2) gamma gamma*", "-q sqrt(1+q^2) alpha* gamma*"},
         {"gamma^2", "q^-1 sqrt(1+q^2) gamma alpha*", "alpha*^2"}},
        presentation_suq2());
    return verdict(corep_matrix(2).entries == want, "9 entries");
  });
  for (int k = 0; k <= std::max(cfg.n, 4); ++k)
    run.check("hopf.corep." + std::to_string(k), "corepresentation invariants", [k] {
      const CorepChecks c = check_corep(corep_matrix(k));
      return verdict(c.all(), "t(" + std::to_string(k) + ") is " + std::to_string(k + 1) + "x" + std::to_string(k + 1),
                     join(c.failures()));
    });
}

void bundle_checks(Runner& run, const RunConfig& cfg) {
  const int n = cfg.n;
  for (int k = 0; k <= n; ++k)
    run.check("bundles.U." + std::to_string(k), "symmetrized isometries", [k] {
      const TrivPair& U = u_n(k);  // construction asserts U* U = 1 and covariance
      return verdict(true, std::to_string(U.rows()) + "x" + std::to_string(U.rank()));
    });
  for (int k = 0; k + 1 <= n; ++k)
    run.check("bundles.W." + std::to_string(k), "antisymmetrized partial isometries", [k] {
      const TrivPair& W = w_n(k);
      return verdict(true, std::to_string(W.rows()) + "x" + std::to_string(W.rank()));
    });
  for (int k = 1; k <= n; ++k)
    run.check("bundles.orthogonality." + std::to_string(k), "orthogonality of U and W", [k] {
      const IdentityReport r = check_orthogonality(k);
      return verdict(r.passed, r.name, r.detail);
    });
  for (int k = 1; k <= n; ++k)
    run.check("bundles.projection." + std::to_string(k), "projections of the associated modules", [k] {
      // construction asserts idempotence, self-adjointness and coinvariance
      const Projection p = projection(u_n(k));
      return verdict(true, std::to_string(p.size()) + "x" + std::to_string(p.size()));
    });
  for (int k = 1; k <= std::min(n - 1, 2); ++k)
    run.check("bundles.decomposition." + std::to_string(k), "decomposition of E1 (x) En", [k] {
      const DecompositionReport& r = decomposition(k);
      return verdict(r.passed(), "P(" + std::to_string(k) + ",1) = p(" + std::to_string(k + 1) + ") + q(" +
                                     std::to_string(k - 1) + ")",
                     join(r.mismatches));
    });
}

void chern_checks(Runner& run, const RunConfig& cfg) {
  run.check("chern.instanton", "instanton index", [] {
    const CharacterReport r = character(projection(u1()), "E1", 1);
    return verdict(r.ch() == DualNumber{2, -1}, r.ch().to_string(), r.exact_intermediate);
  });
  for (int k = 1; k <= cfg.n; ++k) {
    const DualNumber want{k + 1, -Int(k) * (k + 1) * (k + 2) / 6};
    run.check("chern.p." + std::to_string(k), "index of the higher bundles", [k, want] {
      const CharacterReport r = character_of_trace(pair_trace(u_n(k)), "p(n)", k, k + 1);
      return verdict(r.ch() == want, r.ch().to_string(), r.exact_intermediate);
    });
    if (k <= 3)
      run.check("chern.p_recursive." + std::to_string(k), "index through the decomposition", [k, want] {
        // p(k) = P(k-1,1) - q(k-2) once the decomposition is verified
        DualNumber ch = character_of_trace(tensor_trace(pair_trace(u_n(k - 1)), u1()), "P(n,1)", k - 1).ch();
        if (k >= 2) {
          const DecompositionReport& d = decomposition(k - 1);
          if (!d.passed()) return verdict(false, {}, "decomposition fails");
          ch = ch - character_of_trace(pair_trace(w_n(k - 2)), "q(n)", k - 2, k - 1).ch();
        }
        return verdict(ch == want, ch.to_string());
      });
  }
  run.check("chern.Q0", "trivial determinant line bundle", [] {
    const CharacterReport r = character(projection(w_n(0)), "Q0", 0);
    return verdict(r.ch() == DualNumber{1, 0}, r.ch().to_string(), r.exact_intermediate);
  });
  run.check("chern.eta", "regularized traces of quadratic elements", [] {
    const QScalar e2 = eta(y0() * y0());
    const bool ok = e2 * (QScalar(1) - qp(4)) * (QScalar(1) - qp(8)) == qp(8) &&
                    eta(y0()) == (QScalar(1) + qp(-4)) * (QScalar(1) + qp(2)) * e2 &&
                    eta(star(y1()) * y1()) == qp(-6) * (QScalar(1) + qp(4)) * e2 &&
                    eta(y1() * star(y1())) == qp(-6) * (QScalar(1) + qp(4)) * e2 &&
                    eta(star(y2()) * y2()) == e2 && eta(y2() * star(y2())) == e2;
    return verdict(ok, "eta(y0^2) = " + e2.to_string());
  });
}

void relation_checks(Runner& run, const RunConfig&) {
  run.check("k.relation", "K-theory relation for the instanton bundle", [] {
    const RelationReport r = k_relation_check();
    std::string values;
    for (const auto& [name, v] : r.values) values += (values.empty() ? "" : "; ") + name + " = " + v.to_string();
    return verdict(r.passed, values);
  });
  for (int k = 1; k <= 3; ++k)
    run.check("k.tensor_power." + std::to_string(k), "characters of tensor powers", [k] {
      const RelationReport r = tensor_power_check(k);
      return verdict(r.passed, r.values.front().second.to_string());
    });
  run.check("k.basis", "integral basis change", [] { return verdict(basis_check({{1, 0}, {2, -1}}), "det = -1"); });
}

void classical_checks(Runner& run, const RunConfig& cfg) {
  const int top = std::max(cfg.n, 1);
  run.check("classical.clifford", "Clifford relations", [top] {
    for (int m = 1; m <= std::min(top, 4); ++m) {
      const int dim = 1 << m;
      for (int i = 1; i <= 2 * m + 1; ++i)
        for (int j = 1; j <= 2 * m + 1; ++j) {
          const GaussianMatrix a = gamma(m, i) * gamma(m, j) + gamma(m, j) * gamma(m, i);
          const GaussianMatrix want = i == j ? GaussianMatrix(Gaussian(2) * GaussianMatrix::Identity(dim, dim))
                                             : GaussianMatrix(GaussianMatrix::Zero(dim, dim));
          if (!(a == want)) return verdict(false, {}, "n=" + std::to_string(m));
        }
    }
    return verdict(true, "n <= " + std::to_string(std::min(top, 4)));
  });
  for (int k = 1; k <= top; ++k) {
    run.check("classical.chern." + std::to_string(k), "top Chern number of the spinor bundle", [k] {
      const Int c = chern_number(k);
      Outcome o = verdict(c == (k % 2 == 0 ? 1 : -1), std::to_string(c));
      if (k <= 2) {
        o.value = chern_number_oracle(k);
        o.passed = o.passed && std::abs(*o.value - double(c)) < 1e-12;
      }
      return o;
    });
    run.check("classical.rank." + std::to_string(k), "rank of the spinor bundle", [k] {
      const Int r = rank_check(k);
      return verdict(r == (Int(1) << (k - 1)), std::to_string(r));
    });
  }
}

void numeric_checks(Runner& run, const RunConfig& cfg) {
  const std::vector<std::pair<int, Int>> targets = {{1, -1}, {2, -4}};
  for (double q0 : cfg.q)
    for (auto [k, exact] : targets)
      run.check("numcheck.ch1.p" + std::to_string(k) + ".q" + label(q0), "numeric index", [&, q0, k, exact] {
        // raise K until the geometric tail q0^{2K} is below 1e-12
        const int K = std::max(cfg.trunc, static_cast<int>(std::ceil(std::log(1e-12) / (2 * std::log(q0)))));
        const double v = numeric_trace_ch1(pair_trace(u_n(k)), K, q0);
        Outcome o = verdict(std::abs(v - double(exact)) <= 1e-8, std::to_string(exact), "K = " + std::to_string(K));
        o.value = v;
        return o;
      });
  for (auto [k, exact] : targets) {
    const std::string id = "ch1(p" + std::to_string(k) + ")";
    run.check("numcheck.convergence.p" + std::to_string(k), "geometric convergence in the truncation", [&, k, exact, id] {
      const std::vector<int> Ks = {6, 12, 24};
      auto rows = convergence_table(id, pair_trace(u_n(k)), double(exact), Ks, {0.5});
      const bool ok = rows[1].abs_error < rows[0].abs_error && rows[2].abs_error < rows[1].abs_error;
      Outcome o = verdict(ok, std::to_string(exact));
      o.value = rows.back().value;
      run.report.tables.insert(run.report.tables.end(), rows.begin(), rows.end());
      return o;
    });
  }
  run.check("numcheck.idempotence", "numeric idempotence", [] {
    const double d = numeric_idempotence(projection(u1()), 10, 0.5);
    Outcome o = verdict(d < 1e-12, "0");
    o.value = d;
    return o;
  });
  for (double q0 : cfg.q)
    run.check("numcheck.eta.q" + label(q0), "regularized traces at sample q", [q0] {
      const int K = q0 < 0.8 ? 40 : 170;
      double worst = 0;
      for (const NCPoly& b : {y0(), y0() * y0(), star(y1()) * y1(), star(y2()) * y2()})
        worst = std::max(worst, std::abs(eval_float(eta(b), q0) - numeric_trace_ch1(b, K, q0)));
      Outcome o = verdict(worst < 1e-10, "0");
      o.value = worst;
      return o;
    });
}

using Group = void (*)(Runner&, const RunConfig&);

const std::vector<std::pair<std::string, Group>>& groups() {
  static const std::vector<std::pair<std::string, Group>> g = {
      {"verify-algebra", algebra_checks}, {"verify-hopf", hopf_checks}, {"verify-bundles", bundle_checks},
      {"chern", chern_checks},           {"k-relations", relation_checks}, {"classical", classical_checks},
      {"numcheck", numeric_checks},
  };
  return g;
}

}  // namespace

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, g] : groups()) out.push_back(name);
    out.emplace_back("all");
    return out;
  }();
  return names;
}

void validate(const RunConfig& config) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), config.subcommand) == names.end())
    throw DomainError("unknown subcommand " + config.subcommand);
  if (config.n < 0 || config.n > 5) throw DomainError("--n must be in 0..5");
  if (config.q.empty()) throw DomainError("--q needs at least one value");
  for (double q0 : config.q)
    if (!(q0 > 0 && q0 < 1)) throw DomainError("--q values must lie strictly inside (0,1)");
  if (config.trunc < 1) throw DomainError("--trunc must be positive");
  if (config.degree_bound < 3) throw DomainError("--degree-bound must be at least 3");
}

SuiteReport run_suite(const RunConfig& config) {
  validate(config);
  Runner run;
  for (const auto& [name, group] : groups())
    if (config.subcommand == "all" || config.subcommand == name) group(run, config);
  return std::move(run.report);
}

}  // namespace qsphere
