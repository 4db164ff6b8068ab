// Python bindings for the main operations: parsing/pretty printing, the two
// executable semantics, the validity oracles, entailment, verification with
// certificate emission, certificate re-checking, refinement checks, and the
// fuzz suites.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "whilecf/fuzz.hpp"
#include "whilecf/parser.hpp"
#include "whilecf/simulation.hpp"
#include "whilecf/smallstep.hpp"
#include "whilecf/verify.hpp"

#include <map>

namespace py = pybind11;
using namespace whilecf;

namespace {

Footprint make_footprint(const std::vector<std::string>& vars, uint64_t modulus) {
  return Footprint(vars, modulus);
}

State state_from_dict(const Footprint& fp, const std::map<std::string, uint64_t>& vals) {
  State s;
  s.vals.assign(fp.vars().size(), 0);
  for (const auto& [k, v] : vals) s = state_set(s, fp, k, v);
  return s;
}

std::map<std::string, uint64_t> state_to_dict(const State& s, const Footprint& fp) {
  std::map<std::string, uint64_t> out;
  for (size_t i = 0; i < fp.vars().size(); ++i) out[fp.vars()[i]] = s.vals[i];
  return out;
}

Triple triple_of(const SpecFile& spec, const CmdPtr& c) {
  return Triple{spec.pre, c, spec.post, spec.post_brk, spec.post_con};
}

py::dict verdict_to_py(const Verdict& v, const Footprint& fp) {
  py::dict d;
  d["holds"] = v.holds();
  d["kind"] = v.kind == VerdictKind::Holds          ? "holds"
              : v.kind == VerdictKind::CounterExample ? "counterexample"
                                                      : "inconclusive";
  d["bounded"] = v.bounded;
  if (v.is_counterexample()) {
    d["state"] = state_to_dict(v.witness_state, fp);
    d["detail"] = v.detail;
  }
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "While-CF verification toolkit";

  py::register_exception<SyntaxError>(m, "WhilecfSyntaxError");
  py::register_exception<CapExceeded>(m, "CapExceeded");

  py::class_<Footprint>(m, "Footprint")
      .def(py::init(&make_footprint), py::arg("vars"), py::arg("modulus"))
      .def_property_readonly("vars", &Footprint::vars)
      .def_property_readonly("modulus", &Footprint::modulus);

  m.def("parse_program", [](const std::string& text) {
    return pretty(parse_command(text)); // normalized surface form
  });

  m.def("run_big", [](const std::string& program, const Footprint& fp,
                      const std::map<std::string, uint64_t>& state, uint64_t fuel) {
    CmdPtr c = parse_command(program);
    Outcome o = eval_big(c, state_from_dict(fp, state), fp, fuel);
    return outcome_to_string(o, fp);
  }, py::arg("program"), py::arg("footprint"), py::arg("state"), py::arg("fuel") = 10000);

  m.def("run_small", [](const std::string& program, const Footprint& fp,
                        const std::map<std::string, uint64_t>& state, uint64_t fuel) {
    CmdPtr c = parse_command(program);
    Outcome o = run_small(Config{c, kont_empty(), state_from_dict(fp, state)}, fp, fuel);
    return outcome_to_string(o, fp);
  }, py::arg("program"), py::arg("footprint"), py::arg("state"), py::arg("fuel") = 10000);

  m.def("eval_expr", [](const std::string& expr, const Footprint& fp,
                        const std::map<std::string, uint64_t>& state) -> py::object {
    auto v = eval_expr(parse_expr(expr), state_from_dict(fp, state), fp);
    if (!v) return py::none();
    return py::cast(*v);
  });

  m.def("satisfies", [](const std::map<std::string, uint64_t>& state,
                        const std::map<std::string, uint64_t>& env,
                        const std::string& assertion, const Footprint& fp) {
    Env e;
    for (const auto& [k, v] : env) e.binds.emplace_back(k, v);
    return satisfies(state_from_dict(fp, state), e, parse_assertion(assertion, fp), fp);
  });

  m.def("entails", [](const std::string& p, const std::string& q, const Footprint& fp) {
    Verdict v = entails(parse_assertion(p, fp), parse_assertion(q, fp), fp);
    return verdict_to_py(v, fp);
  });

  m.def("oracle", [](const std::string& program, const std::string& spec,
                     const std::string& embedding, uint64_t fuel) {
    SpecFile s = parse_spec_file(spec);
    Triple t = triple_of(s, parse_command(program));
    Verdict v;
    if (embedding == "big") v = valid_big(t, s.fp, fuel);
    else if (embedding == "wp") v = valid_wp(t, s.fp, fuel);
    else v = valid_cont(t, s.fp, fuel, enumerate_continuations(s.fp, 1, 1));
    return verdict_to_py(v, s.fp);
  }, py::arg("program"), py::arg("spec"), py::arg("embedding") = "big",
     py::arg("fuel") = 10000);

  m.def("refines_big", [](const std::string& c1, const std::string& c2, const Footprint& fp,
                          uint64_t fuel) {
    return verdict_to_py(refines_big(parse_command(c1), parse_command(c2), fp, fuel), fp);
  }, py::arg("c1"), py::arg("c2"), py::arg("footprint"), py::arg("fuel") = 10000);

  m.def("refines_small", [](const std::string& c1, const std::string& c2, const Footprint& fp,
                            uint64_t fuel) {
    return verdict_to_py(refines_small(parse_command(c1), parse_command(c2), fp, fuel), fp);
  }, py::arg("c1"), py::arg("c2"), py::arg("footprint"), py::arg("fuel") = 10000);

  m.def("verify", [](const std::string& program, const std::string& spec, bool if_seq,
                     bool loop_nocontinue) {
    VerifyOptions opts;
    opts.use_if_seq = if_seq;
    opts.use_loop_nocontinue = loop_nocontinue;
    VerifyResult r = verify_file(program, spec, opts);
    py::dict d;
    d["ok"] = r.ok;
    d["triple"] = triple_to_string(r.concluded);
    py::list goals;
    for (const auto& vc : r.vcs.results) {
      py::dict g;
      g["origin"] = vc.vc.origin;
      g["lhs"] = pretty_assertion(vc.vc.lhs);
      g["rhs"] = pretty_assertion(vc.vc.rhs);
      g["holds"] = vc.verdict.holds();
      goals.append(g);
    }
    d["goals"] = goals;
    if (r.certificate) d["certificate"] = print_certificate(*r.certificate);
    return d;
  }, py::arg("program"), py::arg("spec"), py::arg("if_seq") = false,
     py::arg("loop_nocontinue") = false);

  m.def("check_certificate", [](const std::string& text) {
    Certificate cert = parse_certificate(text);
    CheckReport report = check(cert.tree, cert.fp);
    py::dict d;
    d["ok"] = report.ok;
    d["triple"] = report.ok ? triple_to_string(conclusion(cert.tree)) : "";
    py::list failures;
    for (const auto& f : report.failures)
      failures.append(f.path + ": " + f.obligation);
    d["failures"] = failures;
    return d;
  });

  m.def("fuzz_suite", [](const std::string& suite, const Footprint& fp, int count,
                         uint64_t seed, size_t size, uint64_t fuel) {
    fuzz::SuiteConfig cfg(fp);
    cfg.count = count;
    cfg.seed = seed;
    cfg.size = size;
    cfg.fuel = fuel;
    fuzz::SuiteReport r;
    if (suite == "semantics") r = fuzz::semantics_suite(cfg);
    else if (suite == "rules") r = fuzz::rules_suite(cfg);
    else if (suite == "transformers") r = fuzz::transformers_suite(cfg);
    else if (suite == "refinements") r = fuzz::refinements_suite(cfg);
    else if (suite == "oracle") r = fuzz::oracle_agreement_suite(cfg);
    else if (suite == "checker") r = fuzz::checker_suite(cfg);
    else if (suite == "theorems") r = fuzz::bigstep_theorems_suite(cfg);
    else if (suite == "simulation") r = fuzz::simulation_suite(cfg);
    else throw std::invalid_argument("unknown suite: " + suite);
    py::dict d;
    d["name"] = r.name;
    d["performed"] = r.performed;
    d["skipped"] = r.skipped;
    d["violations"] = r.violations;
    d["reproducers"] = r.reproducers;
    return d;
  }, py::arg("suite"), py::arg("footprint"), py::arg("count") = 50, py::arg("seed") = 1,
     py::arg("size") = 8, py::arg("fuel") = 300);
}
