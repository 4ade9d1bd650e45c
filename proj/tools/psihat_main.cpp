// psihat: exact top intersections of psi-hat classes on genus-0 Hassett
// spaces with all weights 1/2, computed over several independent routes.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "psihat/intersections.hpp"
#include "psihat/series.hpp"
#include "psihat/verify.hpp"

namespace {

using psihat::Int;
using ordered_json = nlohmann::ordered_json;

constexpr int kGenfunMaxMarks = 16;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerifyFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long> dense_from_tau(const std::vector<long>& tau) {
  std::vector<long> k;
  for (long v = (long)tau.size() - 1; v >= 0; --v) {
    if (tau[v] < 0) throw UsageError("--tau entries must be nonnegative");
    for (long c = 0; c < tau[v]; ++c) k.push_back(v);
  }
  return k;
}

struct IntegrateArgs {
  int n = 0;
  std::vector<long> k;
  std::vector<long> tau;
  std::string method = "all";
  unsigned threads = 0;
};

psihat::PsiHatMonomial monomial_from(const IntegrateArgs& a) {
  if (a.k.empty() == a.tau.empty()) {
    throw UsageError("provide exactly one of --k (dense) or --tau (multiset)");
  }
  std::vector<long> k = a.k.empty() ? dense_from_tau(a.tau) : a.k;
  int n = a.n;
  if (n == 0) {
    if (!a.tau.empty()) n = (int)k.size();
    else throw UsageError("--n is required with --k");
  }
  if ((int)k.size() != n) throw UsageError("--n does not match the exponent count");
  try {
    return psihat::PsiHatMonomial(n, std::move(k));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_integrate(const IntegrateArgs& args) {
  psihat::PsiHatMonomial m = monomial_from(args);
  ordered_json out;
  out["n"] = m.n;
  out["k"] = m.k;
  ordered_json methods = ordered_json::object();
  try {
    psihat::require_top_intersection(m);
    const bool all = args.method == "all";
    if (all || args.method == "direct") {
      methods["direct"] = psihat::to_string(psihat::integrate_direct(m, args.threads));
    }
    if (all || args.method == "reduced") {
      methods["reduced"] = psihat::to_string(psihat::integrate_reduced(m));
    }
    if (all || args.method == "pk") {
      methods["pk"] = psihat::to_string(psihat::integrate_pk(m));
    }
    if ((all && m.n <= kGenfunMaxMarks) || args.method == "genfun") {
      if (m.n > kGenfunMaxMarks) {
        throw UsageError("--method genfun supports at most " +
                         std::to_string(kGenfunMaxMarks) + " marks");
      }
      const psihat::FormalSeries G = psihat::build_G(m.n);
      methods["genfun"] = psihat::to_string(
          psihat::intersection_from_G(G, psihat::SVector::from_exponents(m.k)));
    }
  } catch (const psihat::DomainError& e) {
    ordered_json err;
    err["error"] = e.what();
    err["n"] = m.n;
    err["k"] = m.k;
    std::cout << err.dump() << "\n";
    return kExitDomain;
  }
  bool agree = true;
  std::string first;
  for (const auto& [name, value] : methods.items()) {
    if (first.empty()) first = value.get<std::string>();
    if (value.get<std::string>() != first) agree = false;
  }
  out["methods"] = methods;
  out["agree"] = agree;
  std::cout << out.dump() << "\n";
  return agree ? 0 : kExitVerifyFailed;
}

int cmd_genfun(int marks, const std::string& which) {
  if (which == "F") {
    std::cout << psihat::to_json(psihat::build_witten_F(marks)) << "\n";
    return 0;
  }
  const psihat::FormalSeries G = psihat::build_G(marks);
  // Series serialization plus each monomial's integer intersection number.
  std::string out = "[";
  bool first = true;
  for (const auto& [key, c] : G.terms()) {
    if (!first) out += ",";
    first = false;
    psihat::SVector sv;
    sv.counts.assign(key.begin(), key.end());
    const Int tauhat = psihat::intersection_from_G(G, sv);
    out += "{\"s\":[";
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(key[i]);
    }
    out += "],\"num\":\"" + c.get_num().get_str() + "\",\"den\":\"" + c.get_den().get_str() +
           "\",\"tauhat\":\"" + psihat::to_string(tauhat) + "\"}";
  }
  out += "]";
  std::cout << out << "\n";
  return 0;
}

int cmd_enumerate(int n, const std::string& format) {
  psihat::for_each_partition(n, [&](const psihat::HalfPartition& p) {
    if (format == "text") {
      std::string line;
      for (const auto& pr : p.pairs) {
        line += "{" + std::to_string(pr.first) + "," + std::to_string(pr.second) + "}";
      }
      for (int s : p.singletons) line += "{" + std::to_string(s) + "}";
      std::cout << line << "\n";
    } else {
      ordered_json j;
      j["pairs"] = ordered_json::array();
      for (const auto& pr : p.pairs) j["pairs"].push_back({pr.first, pr.second});
      j["singletons"] = p.singletons;
      std::cout << j.dump() << "\n";
    }
  });
  return 0;
}

int cmd_pk_graphs(const IntegrateArgs& args, const std::string& format) {
  psihat::PsiHatMonomial m = monomial_from(args);
  const psihat::SVector s = psihat::SVector::from_exponents(m.k);
  psihat::for_each_pk_graph(s, [&](const psihat::PkGraph& g) {
    const Int aut = psihat::aut_count(g);
    const Int pre = psihat::count_preimages(g, s);
    if (format == "text") {
      std::string line = "forks=";
      for (const auto& fp : g.fork_pairs) {
        line += "(" + std::to_string(fp.first) + "," + std::to_string(fp.second) + ")";
      }
      line += " legs=";
      for (std::size_t i = 0; i < g.center_legs.size(); ++i) {
        if (i) line += ",";
        line += std::to_string(g.center_legs[i]);
      }
      line += " aut=" + psihat::to_string(aut) + " preimages=" + psihat::to_string(pre);
      std::cout << line << "\n";
    } else {
      ordered_json j;
      j["forks"] = ordered_json::array();
      for (const auto& fp : g.fork_pairs) j["forks"].push_back({fp.first, fp.second});
      j["legs"] = g.center_legs;
      j["aut"] = psihat::to_string(aut);
      j["preimages"] = psihat::to_string(pre);
      std::cout << j.dump() << "\n";
    }
  });
  return 0;
}

int cmd_export_dot(int n, const std::vector<long>& k, const std::vector<long>& tau) {
  if (!k.empty() || !tau.empty()) {
    IntegrateArgs a;
    a.n = n;
    a.k = k;
    a.tau = tau;
    psihat::PsiHatMonomial m = monomial_from(a);
    psihat::for_each_pk_graph(psihat::SVector::from_exponents(m.k),
                              [&](const psihat::PkGraph& g) { std::cout << psihat::to_dot(g); });
  } else {
    if (n < 1) throw UsageError("--n is required");
    psihat::for_each_partition(
        n, [&](const psihat::HalfPartition& p) { std::cout << psihat::to_dot(psihat::PGraph{p}); });
  }
  return 0;
}

int cmd_verify(const psihat::VerifyOptions& options) {
  const psihat::VerifyReport report = psihat::run_verification(options);
  const psihat::CheckResult* first_failure = nullptr;
  for (const auto& c : report.checks) {
    if (c.passed) {
      std::cout << "[PASS] " << c.name << "\n";
    } else {
      std::cout << "[FAIL] " << c.name << ": " << c.detail << "\n";
      if (!first_failure) first_failure = &c;
    }
  }
  std::cout << report.passed << " passed, " << report.failed << " failed\n";
  if (first_failure) {
    std::cout << "first counterexample: " << first_failure->detail << "\n";
    return kExitVerifyFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact psi-hat intersection numbers on genus-0 weight-1/2 Hassett spaces"};
  app.require_subcommand(1);

  IntegrateArgs iargs;
  CLI::App* integrate = app.add_subcommand(
      "integrate", "Top intersection of a psi-hat monomial, by one or all methods");
  integrate->add_option("--n", iargs.n, "number of marks");
  integrate->add_option("--k", iargs.k, "dense exponents k1,...,kN")->delimiter(',');
  integrate->add_option("--tau", iargs.tau, "exponent multiset s0,s1,...,sL")->delimiter(',');
  integrate->add_option("--method", iargs.method, "direct|reduced|pk|genfun|all")
      ->check(CLI::IsMember({"direct", "reduced", "pk", "genfun", "all"}))
      ->default_val("all");
  integrate->add_option("--threads", iargs.threads, "worker threads (0 = all cores)");

  int genfun_marks = 5;
  std::string genfun_which = "G";
  CLI::App* genfun = app.add_subcommand("genfun", "Dump the generating function F or G");
  genfun->add_option("--marks", genfun_marks, "truncation degree (number of marks)")
      ->required()
      ->check(CLI::Range(5, kGenfunMaxMarks));
  genfun->add_option("--which", genfun_which, "F|G")
      ->check(CLI::IsMember({"F", "G"}))
      ->default_val("G");

  int enum_n = 0;
  std::string enum_format = "json";
  CLI::App* enumerate = app.add_subcommand("enumerate", "Stream all partitions of [n] into blocks of size <= 2");
  enumerate->add_option("--n", enum_n, "number of marks")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--format", enum_format, "json|text")
      ->check(CLI::IsMember({"json", "text"}))
      ->default_val("json");

  IntegrateArgs pkargs;
  std::string pk_format = "json";
  CLI::App* pk_graphs = app.add_subcommand(
      "pk-graphs", "Stream the canonical exponent-level fork graphs of a monomial");
  pk_graphs->add_option("--n", pkargs.n, "number of marks");
  pk_graphs->add_option("--k", pkargs.k, "dense exponents")->delimiter(',');
  pk_graphs->add_option("--tau", pkargs.tau, "exponent multiset")->delimiter(',');
  pk_graphs->add_option("--format", pk_format, "json|text")
      ->check(CLI::IsMember({"json", "text"}))
      ->default_val("json");

  int dot_n = 0;
  std::vector<long> dot_k, dot_tau;
  CLI::App* export_dot = app.add_subcommand(
      "export-dot", "DOT export: partition graphs of [n], or fork graphs of a monomial");
  export_dot->add_option("--n", dot_n, "number of marks");
  export_dot->add_option("--k", dot_k, "dense exponents (switches to fork graphs)")->delimiter(',');
  export_dot->add_option("--tau", dot_tau, "exponent multiset")->delimiter(',');

  psihat::VerifyOptions vopts;
  std::string inject;
  CLI::App* verify = app.add_subcommand("verify", "Run the cross-verification suites");
  verify->add_option("--n-max", vopts.n_max, "largest number of marks")
      ->default_val(8)
      ->check(CLI::Range(5, 12));
  verify->add_option("--genfun-max", vopts.genfun_n_max,
                     "generating-function comparison ceiling (0 = min(n-max, 10))")
      ->check(CLI::Range(0, kGenfunMaxMarks));
  verify->add_option("--threads", vopts.threads, "worker threads (0 = all cores)");
  verify->add_option("--inject-fault", inject,
                     "test instrumentation: perturb a core routine to prove failure detection")
      ->check(CLI::IsMember({"multinomial"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (integrate->parsed()) return cmd_integrate(iargs);
    if (genfun->parsed()) return cmd_genfun(genfun_marks, genfun_which);
    if (enumerate->parsed()) return cmd_enumerate(enum_n, enum_format);
    if (pk_graphs->parsed()) return cmd_pk_graphs(pkargs, pk_format);
    if (export_dot->parsed()) return cmd_export_dot(dot_n, dot_k, dot_tau);
    if (verify->parsed()) {
      vopts.inject_multinomial_fault = (inject == "multinomial");
      return cmd_verify(vopts);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const psihat::DomainError& e) {
    ordered_json err;
    err["error"] = e.what();
    std::cout << err.dump() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
