#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hocc/closure.hpp"
#include "hocc/parser.hpp"

namespace py = pybind11;

namespace {

hocc::Mode mode_of(const hocc::Problem& p, const std::string& override_mode) {
  if (override_mode == "plain") return hocc::Mode::Plain;
  if (override_mode == "modulo") return hocc::Mode::Modulo;
  if (override_mode == "hopm") return hocc::Mode::HopmBetaEta;
  return p.mode.value_or(hocc::Mode::Plain);
}

py::dict report_to_dict(const hocc::Report& report) {
  py::dict out;
  out["verdict"] = hocc::to_string(report.verdict);
  py::list rules;
  for (const auto& rr : report.rules) {
    py::dict r;
    r["id"] = rr.id;
    r["in_closure"] = rr.in_closure;
    r["ops"] = rr.ops_used;
    r["failed_goals"] = rr.failed_goals;
    rules.append(r);
  }
  out["rules"] = rules;
  py::list eqs;
  for (const auto& er : report.equations) {
    py::dict e;
    e["id"] = er.id;
    e["ok"] = er.ok;
    e["calls_equivalent"] = er.calls_equivalent;
    eqs.append(e);
  }
  out["equations"] = eqs;
  out["diagnostics"] = report.diagnostics;
  return out;
}

}  // namespace

PYBIND11_MODULE(_hocc, m) {
  m.doc() = "computability-closure termination checker for higher-order "
            "rewrite systems";

  m.def("parse", [](const std::string& text) {
    hocc::Problem p = hocc::parse_problem(text);
    py::dict out;
    out["sorts"] = std::vector<std::string>(p.system.type_constants.begin(),
                                            p.system.type_constants.end());
    py::dict symbols;
    for (auto& [name, type] : p.system.symbols)
      symbols[py::str(name)] = type.str();
    out["symbols"] = symbols;
    py::list rules;
    for (auto& r : p.system.rules)
      rules.append(py::make_tuple(r.id, hocc::to_string(r.lhs),
                                  hocc::to_string(r.rhs)));
    out["rules"] = rules;
    py::list eqs;
    for (auto& e : p.system.equations)
      eqs.append(py::make_tuple(e.id, hocc::to_string(e.lhs),
                                hocc::to_string(e.rhs)));
    out["equations"] = eqs;
    return out;
  }, py::arg("text"), "Parse a problem file, returning a summary dict.");

  m.def("check",
        [](const std::string& text, const std::string& order,
           const std::string& interp, bool auto_search, bool complete,
           const std::string& mode, bool assume_commutation, int depth) {
          hocc::Problem p = hocc::parse_problem(text);
          auto errors = hocc::validate(p.system);
          if (!errors.empty())
            throw std::runtime_error("invalid system: " + errors[0].code +
                                     ": " + errors[0].message);
          if (complete) p.system = hocc::complete_beta_eta(p.system);
          hocc::Mode m = mode_of(p, mode);
          hocc::Report report;
          hocc::CheckerConfig config;
          if (auto_search) {
            auto res = hocc::auto_search(p.system, m, p.ordering,
                                         assume_commutation);
            if (res.config) config = *res.config;
            report = std::move(res.report);
          } else {
            config.mode = m;
            config.ordering = p.ordering;
            config.max_depth = depth;
            config.assume_commutation = assume_commutation;
            if (!order.empty()) {
              auto fam = hocc::order_family_from_string(order);
              if (!fam) throw std::runtime_error("unknown order " + order);
              config.ordering.family = *fam;
            } else if (m == hocc::Mode::Modulo && !p.system.equations.empty()) {
              config.ordering.family = hocc::OrderFamily::Aliens;
            }
            config.interpretation = interp == "acc" ? hocc::Interp::Accessible
                                                    : hocc::Interp::Basic;
            report = hocc::check_system(p.system, config);
          }
          py::dict out = report_to_dict(report);
          out["certificate"] =
              hocc::certificate_json(p.system, config, report).dump();
          return out;
        },
        py::arg("text"), py::arg("order") = "", py::arg("interp") = "basic",
        py::arg("auto_search") = false, py::arg("complete") = false,
        py::arg("mode") = "", py::arg("assume_commutation") = false,
        py::arg("depth") = 64,
        "Run the termination check on a problem text.");

  m.def("verify_certificate",
        [](const std::string& text, const std::string& cert_json) {
          hocc::Problem p = hocc::parse_problem(text);
          hocc::ordered_json cert = hocc::ordered_json::parse(cert_json);
          hocc::VerifyResult v = hocc::verify_certificate(p.system, cert);
          return py::make_tuple(v.ok, v.failure);
        },
        py::arg("text"), py::arg("certificate"),
        "Independently re-check a certificate.");

  m.def("normalize",
        [](const std::string& text, const std::string& term, int fuel,
           const std::string& strategy) {
          hocc::Problem p = hocc::parse_problem(text);
          hocc::Term t = hocc::parse_term(p, term);
          hocc::Strategy s = strategy == "full" ? hocc::Strategy::Full
                                                : hocc::Strategy::Leftmost;
          hocc::NormalizeResult res = hocc::normalize(p.system, t, fuel, s);
          py::dict out;
          out["fuel_exhausted"] = res.fuel_exhausted;
          out["result"] =
              res.fuel_exhausted ? std::string() : hocc::to_string(res.result);
          std::vector<std::string> steps;
          for (const auto& st : res.trace) steps.push_back(hocc::to_string(st));
          out["steps"] = steps;
          return out;
        },
        py::arg("text"), py::arg("term"), py::arg("fuel") = 10000,
        py::arg("strategy") = "leftmost", "Normalize a term under the rules.");

  m.def("complete",
        [](const std::string& text) {
          hocc::Problem p = hocc::parse_problem(text);
          hocc::RewriteSystem done = hocc::complete_beta_eta(p.system);
          py::list rules;
          for (auto& r : done.rules)
            rules.append(py::make_tuple(r.id, hocc::to_string(r.lhs),
                                        hocc::to_string(r.rhs)));
          return rules;
        },
        py::arg("text"), "Beta/eta-complete the rule set.");
}
