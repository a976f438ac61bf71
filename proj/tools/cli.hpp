#pragma once

// Command implementations for the xhermite tool. Kept in a header so the
// test suite can run commands in-process against string streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "xhermite/xhermite.hpp"

namespace xhermite::cli {

enum class Format { human, json, csv };

struct RunConfig {
  Partition partition;
  int cutoff = 0;
  int quad_order = 0;  // 0: convergence-guarded default
  Format format = Format::human;
  unsigned seed = 1;
  std::vector<int> gaps;
  bool inject_fault = false;
};

namespace detail {

inline nlohmann::json poly_json(const ExactPoly& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_exact_string(c));
  return coeffs;
}

inline std::string set_string(const std::vector<int>& v) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "}";
  return os.str();
}

template <class T>
std::string list_string(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

inline std::string float17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Collects PASS/FAIL lines; the exit status is derived from it.
class Report {
 public:
  void pass(const std::string& what) { lines_.push_back("PASS " + what); }
  void fail(const std::string& what, const std::string& residual) {
    lines_.push_back("FAIL " + what + "\n     residual: " + residual);
    ++failures_;
  }
  void skip(const std::string& what) { lines_.push_back("SKIP " + what); }

  template <class F>
  void check(const std::string& what, F&& body) {
    try {
      body();
      pass(what);
    } catch (const InconsistencyError& e) {
      fail(what, e.residual());
    }
  }

  int failures() const { return failures_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  std::vector<std::string> lines_;
  int failures_ = 0;
};

inline ExactPoly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-9, 9);
  std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& v : c) v = coef(rng);
  return ExactPoly(std::move(c));
}

}  // namespace detail

inline nlohmann::json family_json(const FamilySpec& fam, int cutoff) {
  const Partition& lambda = fam.lambda();
  nlohmann::json j;
  j["partition"] = std::vector<int>(lambda.parts().begin(), lambda.parts().end());
  j["N"] = lambda.size();
  j["ell"] = lambda.length();
  j["exceptional_degrees"] = fam.degrees().exceptional;
  j["sporadic_degrees"] = fam.degrees().sporadic;
  j["eta"] = {{"coeffs", detail::poly_json(fam.eta_poly())}};
  nlohmann::json polys = nlohmann::json::array();
  for (int n : fam.allowed(cutoff)) polys.push_back({{"n", n}, {"coeffs", detail::poly_json(fam.polynomial(n))}});
  j["polynomials"] = polys;
  return j;
}

inline int cmd_family(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FamilySpec fam(cfg.partition);
  const Partition& lambda = fam.lambda();
  if (!is_even(lambda)) {
    err << "warning: " << to_string(lambda)
        << " is not even; eta has real zeros and the family is not orthogonal\n";
  }
  if (cfg.format == Format::json) {
    out << family_json(fam, cfg.cutoff).dump(2) << "\n";
    return 0;
  }
  out << "partition " << to_string(lambda) << "\n";
  out << "N = " << lambda.size() << ", ell = " << lambda.length() << "\n";
  out << "exceptional degrees K = " << detail::set_string(fam.degrees().exceptional) << "\n";
  out << "sporadic degrees = " << detail::set_string(fam.degrees().sporadic) << "\n";
  out << "allowed degrees <= " << cfg.cutoff << " = " << detail::set_string(fam.allowed(cfg.cutoff)) << "\n";
  out << "eta = " << to_string(fam.eta_poly()) << "\n";
  for (int n : fam.allowed(cfg.cutoff)) {
    const ExactPoly h = fam.polynomial(n);
    out << "H_" << n << " [deg " << h.deg() << ", lead " << h.leading().get_str() << "] = " << to_string(h)
        << "\n";
  }
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Partition& lambda = cfg.partition;
  const FamilySpec fam(lambda);
  const std::string name = to_string(lambda);
  const ExactPoly& e = fam.eta_poly();
  const std::vector<int> allowed = fam.allowed(cfg.cutoff);
  detail::Report rep;

  rep.check("degree and leading-coefficient laws", [&] {
    for (int n : allowed) fam.polynomial(n);  // constructors check 2^n x^n
  });
  rep.check("K_lambda Wronskian representation", [&] { gapset_wronskian_scalar(lambda); });
  rep.check("shift invariance l = ell..N", [&] {
    for (int l = lambda.length() + 1; l <= lambda.size(); ++l)
      for (int n : allowed) {
        if (!(exceptional_ratio(lambda, n, l) == RatFun(fam.polynomial(n), e)))
          throw InconsistencyError("shift invariance", "l=" + std::to_string(l) + " n=" + std::to_string(n));
      }
  });
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    const int n = allowed[i];
    ExactPoly h = fam.polynomial(n);
    if (cfg.inject_fault && i == 0) h += ExactPoly::constant(1);
    const long ev = 2L * (lambda.size() - n);
    const ExactPoly r = eigen_residual(e, h, ev);
    const std::string what = "eigen identity n=" + std::to_string(n) + " eigenvalue " + std::to_string(ev);
    if (r.is_zero()) rep.pass(what);
    else rep.fail(what, to_string(r));
  }
  const bool even = is_even(lambda);
  const bool zero_free = count_real_roots(e) == 0;
  if (even == zero_free) rep.pass("Krein-Adler: even = " + std::string(even ? "true" : "false"));
  else rep.fail("Krein-Adler", "real roots of eta = " + std::to_string(count_real_roots(e)));

  rep.check("norm identity over K_lambda", [&] {
    for (int n : allowed) norm_identity_residual(fam.degrees().exceptional, n);
  });

  std::mt19937 rng(cfg.seed);
  rep.check("adjoint identity (random f, g)", [&] {
    for (int k = 0; k < 10; ++k)
      adjoint_identity_residual(e, ExactPoly::constant(1), detail::random_poly(rng, 5), detail::random_poly(rng, 5));
  });
  rep.check("Lagrange identity (random f, g)", [&] {
    for (int k = 0; k < 10; ++k) lagrange_identity_residual(e, detail::random_poly(rng, 5), detail::random_poly(rng, 5));
  });

  if (!even) {
    rep.skip("factorization chains (partition is not even)");
  } else {
    std::vector<ChainStep> chain;
    rep.check("descending chain invariants", [&] { chain = build_chain(lambda, ChainMode::descending); });
    rep.check("ascending chain invariants", [&] { build_chain(lambda, ChainMode::ascending); });
    for (const auto& step : chain) {
      rep.check("factorization step " + std::to_string(step.j), [&] {
        for (int k = 0; k <= 5; ++k) verify_factorization(step, ExactPoly::monomial(1, static_cast<std::size_t>(k)));
        for (const Partition& level : {step.meta.lower, step.meta.upper}) {
          const FamilySpec f(level);
          for (int n : f.allowed(lambda.size() + 4)) verify_factorization(step, f.polynomial(n));
        }
        adjoint_identity_residual(step.eta_hi, step.eta_lo, detail::random_poly(rng, 5), detail::random_poly(rng, 5));
      });
    }
    for (const auto& s : spectrum_removal(lambda, cfg.cutoff)) {
      const std::string what = "spectrum removal step " + std::to_string(s.j) + " (max = " + std::to_string(s.eps0) + ")";
      if (s.holds()) rep.pass(what);
      else rep.fail(what, "sigma_j\\{eps0} = " + detail::list_string(s.lower_removed) +
                              "; sigma_{j+1}-2 = " + detail::list_string(s.upper_shifted));
    }
  }

  if (cfg.format == Format::json) {
    nlohmann::json j;
    j["partition"] = std::vector<int>(lambda.parts().begin(), lambda.parts().end());
    j["lines"] = rep.lines();
    j["failures"] = rep.failures();
    out << j.dump(2) << "\n";
  } else {
    out << "verify " << name << " (allowed degrees <= " << cfg.cutoff << ")\n";
    for (const auto& l : rep.lines()) out << l << "\n";
    out << (rep.failures() == 0 ? "all identities hold" : std::to_string(rep.failures()) + " failure(s)") << "\n";
  }
  return rep.failures() == 0 ? 0 : 1;
}

inline int cmd_chain(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Partition& lambda = cfg.partition;
  if (!is_even(lambda)) throw AdmissibilityError(to_string(lambda) + " is not an even partition");
  const std::vector<ChainStep> chain = build_chain(lambda, ChainMode::descending);
  const DegreeSets d = degree_sets(lambda);
  const std::vector<SpectrumStep> removal = spectrum_removal(lambda, cfg.cutoff);
  int failures = 0;
  nlohmann::json rows = nlohmann::json::array();

  if (cfg.format != Format::json) {
    out << "partition " << to_string(lambda) << ", N = " << lambda.size() << ", ell_0 = " << lambda.length()
        << ", K = " << detail::set_string(d.exceptional) << "\n";
    if (chain.empty()) out << "empty chain: classical operator\n";
  }
  std::vector<int> k_j = d.exceptional;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const ChainStep& s = chain[i];
    const int j = s.j + 1;
    k_j.push_back(d.sporadic[static_cast<std::size_t>(s.j)]);
    std::sort(k_j.begin(), k_j.end());
    const Partition& up = s.meta.upper;
    const bool ok = removal[i].holds();
    failures += ok ? 0 : 1;
    if (cfg.format == Format::json) {
      rows.push_back({{"j", j},
                      {"K_j", k_j},
                      {"lambda_j", std::vector<int>(up.parts().begin(), up.parts().end())},
                      {"N_j", up.size()},
                      {"ell_j", up.length()},
                      {"eps0", s.eps0},
                      {"removal_rule", ok}});
    } else {
      out << "j=" << j << "  K_" << j << " = " << detail::set_string(k_j) << "  lambda^(" << j
          << ") = " << to_string(up) << "  N_" << j << " = " << up.size() << "  ell_" << j << " = "
          << up.length() << "  eps0 = 2*ell_" << s.j << " = " << s.eps0 << "\n";
      out << (ok ? "PASS" : "FAIL") << " removal rule: sigma_" << j << " - 2 = sigma_" << s.j << " \\ {"
          << s.eps0 << "}\n";
    }
  }
  if (cfg.format == Format::json) {
    nlohmann::json j;
    j["partition"] = std::vector<int>(lambda.parts().begin(), lambda.parts().end());
    j["steps"] = rows;
    out << j.dump(2) << "\n";
  }
  return failures == 0 ? 0 : 1;
}

inline int cmd_gaps(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Partition lambda = partition_from_gapset(cfg.gaps);
    if (cfg.format == Format::json) {
      nlohmann::json j;
      j["gaps"] = cfg.gaps;
      j["partition"] = std::vector<int>(lambda.parts().begin(), lambda.parts().end());
      j["even"] = is_even(lambda);
      out << j.dump(2) << "\n";
    } else {
      out << "partition " << to_string(lambda) << ", even=" << (is_even(lambda) ? "true" : "false") << "\n";
    }
    return 0;
  } catch (const InfeasibleGapsetError& e) {
    static const char* names[] = {"negative entry", "not distinct", "sum mismatch", "not a partition"};
    err << "infeasible: " << names[static_cast<int>(e.reason())] << ": " << e.what() << "\n";
    return 1;
  }
}

inline int cmd_gram(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Partition& lambda = cfg.partition;
  if (!is_even(lambda)) throw AdmissibilityError(to_string(lambda) + " is not an even partition");
  const std::vector<int> degrees = degree_sets(lambda).allowed(cfg.cutoff);
  const double guard_tol = 1e-12;

  auto change = [](const GramMatrix& a, const GramMatrix& b) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < a.entries.rows(); ++i)
      for (Eigen::Index j = 0; j < a.entries.cols(); ++j)
        m = std::max(m, std::abs(a.entries(i, j) - b.entries(i, j)) /
                            std::sqrt(b.entries(i, i) * b.entries(j, j)));
    return m;
  };

  int order = cfg.quad_order > 0 ? cfg.quad_order : default_quad_order(cfg.cutoff);
  GramMatrix g = gram_matrix(lambda, degrees, gauss_hermite_rule(order));
  GramMatrix next = gram_matrix(lambda, degrees, gauss_hermite_rule(2 * order));
  double delta = change(g, next);
  if (cfg.quad_order == 0) {
    while (delta >= guard_tol && 2 * order < 1024) {
      order *= 2;
      g = std::move(next);
      next = gram_matrix(lambda, degrees, gauss_hermite_rule(2 * order));
      delta = change(g, next);
    }
  }
  if (delta >= guard_tol) {
    err << "warning: convergence guard: doubling quadrature order " << order << " changes entries by "
        << delta << " (relative)\n";
  }

  if (cfg.format == Format::csv) {
    out << "degree";
    for (int n : degrees) out << "," << n;
    out << "\n";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      out << degrees[i];
      for (std::size_t j = 0; j < degrees.size(); ++j)
        out << "," << detail::float17(g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      out << "\n";
    }
    out << "formula_diagonal";
    for (double v : g.formula_diagonal) out << "," << detail::float17(v);
    out << "\nrelative_deviation";
    for (std::size_t i = 0; i < degrees.size(); ++i) out << "," << detail::float17(g.relative_deviation(i));
    out << "\n";
  } else if (cfg.format == Format::json) {
    nlohmann::json j;
    j["partition"] = std::vector<int>(lambda.parts().begin(), lambda.parts().end());
    j["degrees"] = degrees;
    j["quad_order"] = order;
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
      std::vector<double> row;
      for (Eigen::Index c = 0; c < g.entries.cols(); ++c) row.push_back(g.entries(i, c));
      rows.push_back(row);
    }
    j["matrix"] = rows;
    j["formula_diagonal"] = g.formula_diagonal;
    j["max_relative_deviation"] = g.max_relative_deviation();
    j["max_offdiagonal_ratio"] = g.max_offdiagonal_ratio();
    out << j.dump(2) << "\n";
  } else {
    out << "Gram matrix for " << to_string(lambda) << " over degrees " << detail::set_string(degrees)
        << " (quadrature order " << order << ")\n";
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      out << "n=" << degrees[i] << "  quadrature " << detail::float17(g.entries(k, k)) << "  formula "
          << detail::float17(g.formula_diagonal[i]) << "  rel.dev " << g.relative_deviation(i) << "\n";
    }
    out << "max relative deviation " << g.max_relative_deviation() << "\n";
    out << "max off-diagonal ratio " << g.max_offdiagonal_ratio() << "\n";
  }
  return 0;
}

/// Parses argv and dispatches; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exceptional Hermite polynomial families: construction and exact verification", "xhermite"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string partition_text, gaps_text, format_text = "human", out_path;
  int cutoff = -1, quad_order = 0;
  unsigned seed = 1;
  bool inject_fault = false;
  app.add_option("--partition", partition_text, "Partition as comma-separated parts, e.g. 3,3,1,1");
  app.add_option("--cutoff", cutoff, "Largest degree listed or checked");
  app.add_option("--quad-order", quad_order, "Gauss-Hermite order (default: convergence-guarded)");
  app.add_option("--format", format_text, "human|json|csv")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--seed", seed, "Seed for randomized identity checks");
  app.add_option("--out", out_path, "Write the report to this file");

  auto* family = app.add_subcommand("family", "List eta, gap set and exceptional polynomials");
  auto* verify = app.add_subcommand("verify", "Run the exact identity suite");
  verify->add_flag("--inject-fault", inject_fault, "Corrupt one polynomial (negative control)");
  auto* chain = app.add_subcommand("chain", "Descending factorization chain");
  auto* gaps = app.add_subcommand("gaps", "Recover a partition from its gap set");
  gaps->add_option("--gaps", gaps_text, "Gap set as comma-separated degrees")->required();
  auto* gram = app.add_subcommand("gram", "Quadrature Gram matrix against norming constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg.partition = parse_partition(partition_text);
    if (gaps->parsed()) cfg.gaps = parse_int_list(gaps_text);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const int minimum_cutoff = cfg.partition.largest() + cfg.partition.size();
  cfg.cutoff = cutoff >= 0 ? cutoff : minimum_cutoff + 8;
  if (cfg.cutoff < minimum_cutoff) {
    err << "error: --cutoff must be at least lambda_1 + N = " << minimum_cutoff << "\n";
    return 2;
  }
  if (quad_order < 0) {
    err << "error: --quad-order must be positive\n";
    return 2;
  }
  cfg.quad_order = quad_order;
  cfg.format = format_text == "json" ? Format::json : format_text == "csv" ? Format::csv : Format::human;
  cfg.seed = seed;
  cfg.inject_fault = inject_fault;

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot open " << out_path << "\n";
      return 2;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;

  try {
    if (family->parsed()) return cmd_family(cfg, sink, err);
    if (verify->parsed()) return cmd_verify(cfg, sink, err);
    if (chain->parsed()) return cmd_chain(cfg, sink, err);
    if (gaps->parsed()) return cmd_gaps(cfg, sink, err);
    if (gram->parsed()) return cmd_gram(cfg, sink, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace xhermite::cli
