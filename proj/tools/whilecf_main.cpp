// Command line front end: run programs under either semantics, verify
// annotated programs against spec files, re-check emitted certificates, query
// the validity oracles, and drive the fuzz suites.

#include "whilecf/fuzz.hpp"
#include "whilecf/parser.hpp"
#include "whilecf/simulation.hpp"
#include "whilecf/smallstep.hpp"
#include "whilecf/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace whilecf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Footprint footprint_for(const CmdPtr& program, std::string vars_csv, uint64_t modulus) {
  std::vector<std::string> vars;
  if (!vars_csv.empty()) {
    std::stringstream ss(vars_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) vars.push_back(item);
    }
  } else {
    cmd_collect_vars(program, vars);
    if (vars.empty()) vars.push_back("x");
  }
  return Footprint(vars, modulus);
}

State parse_state(const std::string& text, const Footprint& fp) {
  State s;
  s.vals.assign(fp.vars().size(), 0);
  if (text.empty()) return s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad state entry: " + item);
    std::string name = item.substr(0, eq);
    uint64_t value = std::stoull(item.substr(eq + 1));
    s = state_set(s, fp, name, value);
  }
  return s;
}

int cmd_run(const std::string& program_path, const std::string& semantics,
            const std::string& state_text, const std::string& vars_csv, uint64_t modulus,
            uint64_t fuel, bool trace) {
  CmdPtr program = parse_command(read_file(program_path));
  Footprint fp = footprint_for(program, vars_csv, modulus);
  State sigma = parse_state(state_text, fp);

  Outcome out;
  if (semantics == "big") {
    out = eval_big(program, sigma, fp, fuel);
  } else {
    Config cfg{program, kont_empty(), sigma};
    if (trace) {
      uint64_t n = 0;
      while (n <= fuel) {
        std::cout << "  " << config_to_string(cfg, fp) << "\n";
        StepResult r = step(cfg, fp);
        if (r.kind != StepKind::Next) break;
        cfg = r.next;
        ++n;
      }
    }
    out = run_small(Config{program, kont_empty(), sigma}, fp, fuel);
  }
  std::cout << outcome_to_string(out, fp) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& program_path, const std::string& spec_path,
               const std::string& out_path, bool use_if_seq, bool use_loop_nocontinue) {
  VerifyOptions opts;
  opts.use_if_seq = use_if_seq;
  opts.use_loop_nocontinue = use_loop_nocontinue;
  VerifyResult res = verify_file(read_file(program_path), read_file(spec_path), opts);
  for (const auto& r : res.vcs.results) {
    std::cout << (r.verdict.holds() ? "ok   " : "FAIL ") << r.vc.origin << ": "
              << pretty_assertion(r.vc.lhs) << "  |-  " << pretty_assertion(r.vc.rhs) << "\n";
    if (!r.verdict.holds()) std::cout << "     " << verdict_to_string(r.verdict, *res.fp) << "\n";
  }
  if (!res.ok) {
    for (const auto& f : res.check_report.failures)
      std::cout << "check failure at " << f.path << ": " << f.obligation << "\n";
    std::cout << "verification failed\n";
    return kExitFailure;
  }
  std::cout << "verified: " << triple_to_string(res.concluded) << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << print_certificate(*res.certificate);
    std::cout << "certificate written to " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& cert_path) {
  Certificate cert = parse_certificate(read_file(cert_path));
  CheckReport report = check(cert.tree, cert.fp);
  if (!report.ok) {
    for (const auto& f : report.failures) {
      std::cout << "failure at " << f.path << ": " << f.obligation;
      if (f.verdict.is_counterexample())
        std::cout << " -- " << verdict_to_string(f.verdict, cert.fp);
      std::cout << "\n";
    }
    return kExitFailure;
  }
  std::cout << "certificate ok\n";
  std::cout << "concludes: " << triple_to_string(conclusion(cert.tree)) << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& program_path, const std::string& spec_path,
               const std::string& embedding, uint64_t fuel, size_t cont_depth,
               size_t cont_size) {
  SpecFile spec = parse_spec_file(read_file(spec_path));
  CmdPtr program = parse_command(read_file(program_path));
  Triple t{spec.pre, program, spec.post, spec.post_brk, spec.post_con};

  Verdict v;
  if (embedding == "big") {
    v = valid_big(t, spec.fp, fuel);
  } else if (embedding == "wp") {
    v = valid_wp(t, spec.fp, fuel);
  } else {
    std::vector<KontPtr> family = enumerate_continuations(spec.fp, cont_depth, cont_size);
    std::cout << "continuation family: depth <= " << cont_depth << ", command size <= "
              << cont_size << ", " << family.size() << " stacks (bounded verdict)\n";
    v = valid_cont(t, spec.fp, fuel, family);
  }
  std::cout << verdict_to_string(v, spec.fp) << "\n";
  return v.is_counterexample() ? kExitFailure : kExitOk;
}

int cmd_fuzz(const std::string& suite, int count, uint64_t seed, uint64_t modulus,
             const std::string& vars_csv, size_t size, uint64_t fuel) {
  std::vector<std::string> vars;
  std::stringstream ss(vars_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) vars.push_back(item);
  }
  fuzz::SuiteConfig cfg(Footprint(vars, modulus));
  cfg.seed = seed;
  cfg.count = count;
  cfg.size = size;
  cfg.fuel = fuel;

  fuzz::SuiteReport report;
  if (suite == "semantics") report = fuzz::semantics_suite(cfg);
  else if (suite == "rules") report = fuzz::rules_suite(cfg);
  else if (suite == "transformers") report = fuzz::transformers_suite(cfg);
  else if (suite == "refinements") report = fuzz::refinements_suite(cfg);
  else if (suite == "oracle") report = fuzz::oracle_agreement_suite(cfg);
  else if (suite == "checker") report = fuzz::checker_suite(cfg);
  else if (suite == "theorems") report = fuzz::bigstep_theorems_suite(cfg);
  else if (suite == "simulation") report = fuzz::simulation_suite(cfg);
  else {
    std::cerr << "unknown suite: " << suite << "\n";
    return kExitUsage;
  }
  std::cout << fuzz::report_to_string(report) << "\n";
  return report.ok() ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"While-CF verification toolkit"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a program under a chosen semantics");
  std::string run_program, run_semantics = "big", run_state, run_vars;
  uint64_t run_modulus = 8, run_fuel = 10000;
  bool run_trace = false;
  run->add_option("program", run_program, "program file")->required();
  run->add_option("--semantics", run_semantics, "big or small")
      ->check(CLI::IsMember({"big", "small"}));
  run->add_option("--state", run_state, "initial state, e.g. x=1,y=2");
  run->add_option("--vars", run_vars, "footprint variables (comma separated)");
  run->add_option("--modulus", run_modulus, "value domain size");
  run->add_option("--fuel", run_fuel, "evaluation budget");
  run->add_flag("--trace", run_trace, "print the small-step configurations");

  auto* verify = app.add_subcommand("verify", "verify a program against a spec file");
  std::string v_program, v_spec, v_out;
  bool v_ifseq = false, v_loopnc = false;
  verify->add_option("program", v_program, "annotated program file")->required();
  verify->add_option("spec", v_spec, "spec file")->required();
  verify->add_option("--out", v_out, "certificate output path");
  verify->add_flag("--if-seq", v_ifseq, "distribute sequence tails into if branches");
  verify->add_flag("--loop-nocontinue", v_loopnc, "fuse continue-free loop increments");

  auto* chk = app.add_subcommand("check", "re-check a certificate file");
  std::string c_cert;
  chk->add_option("certificate", c_cert, "certificate file")->required();

  auto* oracle = app.add_subcommand("oracle", "run a validity oracle on a spec");
  std::string o_program, o_spec, o_embedding = "big";
  uint64_t o_fuel = 10000;
  size_t o_depth = 2, o_size = 3;
  oracle->add_option("program", o_program, "program file")->required();
  oracle->add_option("spec", o_spec, "spec file")->required();
  oracle->add_option("--embedding", o_embedding, "big, wp, or cont")
      ->check(CLI::IsMember({"big", "wp", "cont"}));
  oracle->add_option("--fuel", o_fuel, "evaluation budget");
  oracle->add_option("--cont-depth", o_depth, "continuation family depth");
  oracle->add_option("--cont-size", o_size, "continuation family command size");

  auto* fz = app.add_subcommand("fuzz", "run a differential/property suite");
  std::string f_suite = "semantics", f_vars = "x,y,z";
  int f_count = 1000;
  uint64_t f_seed = 1, f_modulus = 8, f_fuel = 400;
  size_t f_size = 12;
  fz->add_option("--suite", f_suite,
                 "semantics, rules, transformers, refinements, oracle, checker, theorems, "
                 "or simulation");
  fz->add_option("--count", f_count, "instances per suite");
  fz->add_option("--seed", f_seed, "random seed");
  fz->add_option("--modulus", f_modulus, "value domain size");
  fz->add_option("--vars", f_vars, "footprint variables");
  fz->add_option("--size", f_size, "program node budget");
  fz->add_option("--fuel", f_fuel, "evaluation budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(run_program, run_semantics, run_state, run_vars, run_modulus, run_fuel,
                     run_trace);
    if (verify->parsed()) return cmd_verify(v_program, v_spec, v_out, v_ifseq, v_loopnc);
    if (chk->parsed()) return cmd_check(c_cert);
    if (oracle->parsed())
      return cmd_oracle(o_program, o_spec, o_embedding, o_fuel, o_depth, o_size);
    if (fz->parsed())
      return cmd_fuzz(f_suite, f_count, f_seed, f_modulus, f_vars, f_size, f_fuel);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
