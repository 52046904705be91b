#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hocc/closure.hpp"
#include "hocc/parser.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CheckOptions {
  std::string file;
  std::string order;
  std::string interp = "basic";
  bool auto_mode = false;
  bool complete = false;
  int depth = 64;
  int red_fuel = 3;
  std::string cert_path;
  bool trace = false;
  bool assume_commutation = false;
};

void print_report(const hocc::Report& report, bool trace) {
  for (const auto& rr : report.rules) {
    if (rr.in_closure) {
      std::cout << "RULE " << rr.id << ": IN-CLOSURE via [";
      for (size_t i = 0; i < rr.ops_used.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << rr.ops_used[i];
      }
      std::cout << "]\n";
    } else {
      std::cout << "RULE " << rr.id << ": FAILED at "
                << (rr.failed_goals.empty() ? "?" : rr.failed_goals.front())
                << "\n";
    }
  }
  for (const auto& er : report.equations) {
    if (er.ok) {
      std::cout << "EQ " << er.id << ": IN-CLOSURE (both directions)\n";
    } else {
      std::cout << "EQ " << er.id << ": FAILED";
      if (!er.failed_goals.empty())
        std::cout << " at " << er.failed_goals.front();
      if (!er.calls_equivalent) std::cout << " (sides not equivalent)";
      std::cout << "\n";
    }
  }
  for (const auto& d : report.diagnostics) std::cout << "NOTE: " << d << "\n";
  if (trace) {
    std::function<void(const hocc::DerivNode&, int)> dump =
        [&](const hocc::DerivNode& n, int indent) {
          std::cout << std::string(indent * 2, ' ') << "(" << n.op << ") "
                    << hocc::to_string(n.goal) << "\n";
          for (const auto& c : n.children) dump(c, indent + 1);
        };
    for (const auto& rr : report.rules)
      if (rr.derivation) {
        std::cout << "derivation of " << rr.id << ":\n";
        dump(*rr.derivation, 1);
      }
  }
  std::cout << hocc::to_string(report.verdict) << "\n";
}

int run_check(const CheckOptions& opt) {
  hocc::Problem problem = hocc::parse_problem(read_file(opt.file));
  auto errors = hocc::validate(problem.system);
  if (!errors.empty()) {
    for (auto& e : errors)
      std::cerr << "error: " << e.where << ": " << e.code << ": " << e.message
                << "\n";
    return 2;
  }
  hocc::Mode mode = problem.mode.value_or(hocc::Mode::Plain);
  if (opt.complete || mode == hocc::Mode::HopmBetaEta) {
    if (opt.complete) {
      size_t before = problem.system.rules.size();
      problem.system = hocc::complete_beta_eta(problem.system);
      for (size_t i = before; i < problem.system.rules.size(); ++i) {
        const hocc::Rule& r = problem.system.rules[i];
        std::cout << "COMPLETION: added " << r.id << ": "
                  << hocc::to_string(r.lhs) << " -> " << hocc::to_string(r.rhs)
                  << "\n";
      }
    }
  }

  hocc::Report report;
  hocc::CheckerConfig config;
  if (opt.auto_mode) {
    hocc::AutoResult res = hocc::auto_search(
        problem.system, mode, problem.ordering, opt.assume_commutation);
    if (res.config) config = *res.config;
    report = std::move(res.report);
  } else {
    config.mode = mode;
    config.ordering = problem.ordering;
    config.max_depth = opt.depth;
    config.red_fuel = opt.red_fuel;
    config.assume_commutation = opt.assume_commutation;
    if (!opt.order.empty()) {
      auto fam = hocc::order_family_from_string(opt.order);
      if (!fam) {
        std::cerr << "error: unknown ordering family " << opt.order << "\n";
        return 2;
      }
      config.ordering.family = *fam;
    } else if (mode == hocc::Mode::Modulo && !problem.system.equations.empty()) {
      config.ordering.family = hocc::OrderFamily::Aliens;
    }
    if (opt.interp == "acc")
      config.interpretation = hocc::Interp::Accessible;
    else if (opt.interp == "basic")
      config.interpretation = hocc::Interp::Basic;
    else {
      std::cerr << "error: unknown interpretation " << opt.interp << "\n";
      return 2;
    }
    report = hocc::check_system(problem.system, config);
  }

  print_report(report, opt.trace);

  if (!opt.cert_path.empty()) {
    hocc::ordered_json cert =
        hocc::certificate_json(problem.system, config, report);
    std::ofstream out(opt.cert_path);
    out << cert.dump(2) << "\n";
  }
  if (report.verdict == hocc::Verdict::Yes) {
    hocc::ordered_json cert =
        hocc::certificate_json(problem.system, config, report);
    hocc::VerifyResult v = hocc::verify_certificate(problem.system, cert);
    if (!v.ok) {
      std::cerr << "internal error: emitted certificate fails verification: "
                << v.failure << "\n";
      return 2;
    }
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hocc: a computability-closure termination checker for "
               "higher-order rewrite systems"};
  app.require_subcommand(1);

  CheckOptions opt;
  auto* check = app.add_subcommand("check", "check a problem file");
  check->add_option("file", opt.file, "problem file (.hrs)")->required();
  check->add_option("--order", opt.order,
                    "ordering family: subterm-mul|subterm-stat|struct-stat|"
                    "aliens");
  check->add_option("--interp", opt.interp, "interpretation: basic|acc");
  check->add_flag("--auto", opt.auto_mode, "search configurations");
  check->add_flag("--complete", opt.complete,
                  "apply beta/eta-completion first");
  check->add_option("--depth", opt.depth, "derivation search depth");
  check->add_option("--red-fuel", opt.red_fuel, "(red) closure depth");
  check->add_option("--cert", opt.cert_path, "write the certificate here");
  check->add_flag("--trace", opt.trace, "print derivations");
  check->add_flag("--assume-commutation", opt.assume_commutation,
                  "assume =E commutes with beta");

  std::string verify_file, verify_cert;
  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("file", verify_file, "problem file (.hrs)")->required();
  verify->add_option("cert", verify_cert, "certificate (JSON)")->required();

  std::string norm_file, norm_term, norm_strategy = "leftmost";
  int norm_fuel = 10000;
  bool norm_trace = false;
  auto* normalize = app.add_subcommand("normalize", "normalize a term");
  normalize->add_option("file", norm_file, "problem file (.hrs)")->required();
  normalize->add_option("term", norm_term, "term to normalize")->required();
  normalize->add_option("--fuel", norm_fuel, "step budget");
  normalize->add_option("--strategy", norm_strategy, "leftmost|full");
  normalize->add_flag("--trace", norm_trace, "print each step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (check->parsed()) return run_check(opt);
    if (verify->parsed()) {
      hocc::Problem problem = hocc::parse_problem(read_file(verify_file));
      hocc::ordered_json cert =
          hocc::ordered_json::parse(read_file(verify_cert));
      hocc::VerifyResult v = hocc::verify_certificate(problem.system, cert);
      if (v.ok) {
        std::cout << "VERIFIED\n";
        return 0;
      }
      std::cout << "REJECTED: " << v.failure << "\n";
      return 1;
    }
    if (normalize->parsed()) {
      hocc::Problem problem = hocc::parse_problem(read_file(norm_file));
      hocc::Term t = hocc::parse_term(problem, norm_term);
      hocc::Strategy strat = norm_strategy == "full" ? hocc::Strategy::Full
                                                     : hocc::Strategy::Leftmost;
      hocc::NormalizeResult res;
      if (problem.mode == hocc::Mode::HopmBetaEta) {
        // rewrite with pattern matching modulo beta-eta
        hocc::Term cur = t;
        for (int i = 0; i < norm_fuel; ++i) {
          std::vector<hocc::TraceStep> steps;
          for (auto& [p, r] : hocc::beta_reducts(cur))
            steps.push_back(
                {hocc::ReductionKind::Beta, "", p, r});
          for (auto& s : hocc::rewrite_reducts_hopm(problem.system, cur))
            steps.push_back(s);
          std::sort(steps.begin(), steps.end(), [](auto& a, auto& b) {
            return a.position < b.position;
          });
          if (steps.empty()) break;
          const auto& step =
              strat == hocc::Strategy::Leftmost ? steps.front() : steps.back();
          cur = step.result;
          res.trace.push_back(step);
        }
        bool nf = hocc::beta_reducts(cur).empty() &&
                  hocc::rewrite_reducts_hopm(problem.system, cur).empty();
        if (nf)
          res.result = cur;
        else
          res.fuel_exhausted = true;
      } else {
        res = hocc::normalize(problem.system, t, norm_fuel, strat);
      }
      if (norm_trace)
        for (const auto& s : res.trace)
          std::cout << hocc::to_string(s) << "\n";
      if (res.fuel_exhausted) {
        std::cout << "FUEL-EXHAUSTED\n";
        return 1;
      }
      std::cout << hocc::to_string(res.result) << "\n";
      return 0;
    }
  } catch (const hocc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
