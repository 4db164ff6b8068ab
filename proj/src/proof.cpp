#include "whilecf/proof.hpp"

#include "whilecf/parser.hpp"

#include <sstream>

namespace whilecf {

namespace {
std::shared_ptr<ProofTree> make_node(RuleKind k) {
  auto t = std::make_shared<ProofTree>();
  t->kind = k;
  return t;
}
} // namespace

ProofPtr r_skip(AssertionPtr p) {
  auto t = make_node(RuleKind::RSkip);
  t->p1 = std::move(p);
  return t;
}

ProofPtr r_break(AssertionPtr p) {
  auto t = make_node(RuleKind::RBreak);
  t->p1 = std::move(p);
  return t;
}

ProofPtr r_continue(AssertionPtr p) {
  auto t = make_node(RuleKind::RContinue);
  t->p1 = std::move(p);
  return t;
}

ProofPtr r_assign(std::string var, ExprPtr e, AssertionPtr post) {
  auto t = make_node(RuleKind::RAssign);
  t->var = std::move(var);
  t->expr = std::move(e);
  t->p1 = std::move(post);
  return t;
}

ProofPtr r_seq(AssertionPtr mid, ProofPtr left, ProofPtr right) {
  auto t = make_node(RuleKind::RSeq);
  t->p1 = std::move(mid);
  t->a = std::move(left);
  t->b = std::move(right);
  return t;
}

ProofPtr r_if(ExprPtr cond, ProofPtr then_tree, ProofPtr else_tree) {
  auto t = make_node(RuleKind::RIf);
  t->expr = std::move(cond);
  t->a = std::move(then_tree);
  t->b = std::move(else_tree);
  return t;
}

ProofPtr r_loop(AssertionPtr body_inv, AssertionPtr incr_inv, ProofPtr body, ProofPtr incr) {
  auto t = make_node(RuleKind::RLoop);
  t->p1 = std::move(body_inv);
  t->p2 = std::move(incr_inv);
  t->a = std::move(body);
  t->b = std::move(incr);
  return t;
}

ProofPtr r_conseq(ProofPtr child, AssertionPtr pre, AssertionPtr post, AssertionPtr post_brk,
                  AssertionPtr post_con) {
  auto t = make_node(RuleKind::RConseq);
  t->a = std::move(child);
  t->p1 = std::move(pre);
  t->p2 = std::move(post);
  t->p3 = std::move(post_brk);
  t->p4 = std::move(post_con);
  return t;
}

Triple conclusion(const ProofPtr& t) {
  if (!t) throw MalformedNode("null proof node");
  switch (t->kind) {
    case RuleKind::RSkip: return Triple{t->p1, cmd_skip(), t->p1, a_false(), a_false()};
    case RuleKind::RBreak: return Triple{t->p1, cmd_break(), a_false(), t->p1, a_false()};
    case RuleKind::RContinue:
      return Triple{t->p1, cmd_continue(), a_false(), a_false(), t->p1};
    case RuleKind::RAssign:
      return Triple{subst(t->p1, t->var, t->expr), cmd_assign(t->var, t->expr), t->p1,
                    a_false(), a_false()};
    case RuleKind::RSeq: {
      Triple l = conclusion(t->a);
      Triple r = conclusion(t->b);
      if (!assertion_equal(l.post, t->p1) || !assertion_equal(r.pre, t->p1))
        throw MalformedNode("seq children disagree on the intermediate assertion");
      if (!assertion_equal(l.post_brk, r.post_brk) || !assertion_equal(l.post_con, r.post_con))
        throw MalformedNode("seq children disagree on control-flow posts");
      return Triple{l.pre, cmd_seq(l.cmd, r.cmd), r.post, l.post_brk, l.post_con};
    }
    case RuleKind::RIf: {
      Triple th = conclusion(t->a);
      Triple el = conclusion(t->b);
      // branch preconditions must be P /\ 0 < [e]  and  P /\ [e] = 0
      if (!th.pre || th.pre->kind != AKind::And ||
          !assertion_equal(th.pre->b, guard_true(t->expr)))
        throw MalformedNode("if then-branch pre is not of shape P /\\ (0 < [e])");
      if (!el.pre || el.pre->kind != AKind::And ||
          !assertion_equal(el.pre->b, guard_false(t->expr)))
        throw MalformedNode("if else-branch pre is not of shape P /\\ ([e] = 0)");
      AssertionPtr p = th.pre->a;
      if (!assertion_equal(p, el.pre->a))
        throw MalformedNode("if branches disagree on the common precondition");
      if (!assertion_equal(th.post, el.post) || !assertion_equal(th.post_brk, el.post_brk) ||
          !assertion_equal(th.post_con, el.post_con))
        throw MalformedNode("if branches disagree on postconditions");
      return Triple{p, cmd_if(t->expr, th.cmd, el.cmd), th.post, th.post_brk, th.post_con};
    }
    case RuleKind::RLoop: {
      Triple body = conclusion(t->a);
      Triple incr = conclusion(t->b);
      // body: {P} c1 {I, [Q, I]}   incr: {I} c2 {P, [Q, false]}
      if (!assertion_equal(body.pre, t->p1)) throw MalformedNode("loop body pre is not P");
      if (!assertion_equal(body.post, t->p2) || !assertion_equal(body.post_con, t->p2))
        throw MalformedNode("loop body posts are not {I, [Q, I]}");
      if (!assertion_equal(incr.pre, t->p2)) throw MalformedNode("loop increment pre is not I");
      if (!assertion_equal(incr.post, t->p1))
        throw MalformedNode("loop increment post is not P");
      if (!is_false(incr.post_con))
        throw MalformedNode("loop increment continue-post is not false");
      if (!assertion_equal(body.post_brk, incr.post_brk))
        throw MalformedNode("loop body and increment disagree on the break post");
      return Triple{t->p1, cmd_for(body.cmd, incr.cmd), body.post_brk, a_false(), a_false()};
    }
    case RuleKind::RConseq: {
      Triple child = conclusion(t->a);
      return Triple{t->p1, child.cmd, t->p2, t->p3, t->p4};
    }
  }
  throw MalformedNode("unknown rule");
}

namespace {

void check_node(const ProofPtr& t, const Footprint& fp, uint64_t cap, const std::string& path,
                CheckReport& report, Triple* out);

void fail(CheckReport& report, std::string path, std::string obligation, Verdict v) {
  report.ok = false;
  report.failures.push_back({std::move(path), std::move(obligation), std::move(v)});
}

void check_entailment(const AssertionPtr& p, const AssertionPtr& q, const Footprint& fp,
                      uint64_t cap, const std::string& path, const char* what,
                      CheckReport& report) {
  Verdict v = entails(p, q, fp, cap);
  if (!v.holds())
    fail(report, path, std::string(what) + ": " + pretty_assertion(p) + " |- " +
                           pretty_assertion(q), v);
}

void check_node(const ProofPtr& t, const Footprint& fp, uint64_t cap, const std::string& path,
                CheckReport& report, Triple* out) {
  if (!t) {
    fail(report, path, "null node", Verdict::pass());
    return;
  }
  try {
    switch (t->kind) {
      case RuleKind::RAssign: {
        if (expr_has_div(t->expr)) {
          AssertionPtr pre = subst(t->p1, t->var, t->expr);
          check_entailment(pre, a_defined(t->expr), fp, cap, path,
                           "assignment expression must evaluate", report);
        }
        break;
      }
      case RuleKind::RIf: {
        Triple concl = conclusion(t); // shape errors surface below
        if (expr_has_div(t->expr))
          check_entailment(concl.pre, a_defined(t->expr), fp, cap, path,
                           "if condition must evaluate", report);
        break;
      }
      case RuleKind::RConseq: {
        Triple child = conclusion(t->a);
        check_entailment(t->p1, child.pre, fp, cap, path, "pre entailment", report);
        check_entailment(child.post, t->p2, fp, cap, path, "post entailment", report);
        check_entailment(child.post_brk, t->p3, fp, cap, path, "break-post entailment", report);
        check_entailment(child.post_con, t->p4, fp, cap, path, "continue-post entailment",
                         report);
        break;
      }
      default: break;
    }
    if (t->a) check_node(t->a, fp, cap, path + ".1", report, nullptr);
    if (t->b) check_node(t->b, fp, cap, path + ".2", report, nullptr);
    if (out) *out = conclusion(t);
    else conclusion(t); // composition check at this node
  } catch (const MalformedNode& e) {
    fail(report, path, e.what(), Verdict::pass());
  }
}

} // namespace

CheckReport check(const ProofPtr& t, const Footprint& fp, uint64_t cap) {
  CheckReport report;
  Triple concl;
  check_node(t, fp, cap, "root", report, &concl);
  return report;
}

bool proof_equal(const ProofPtr& a, const ProofPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  return assertion_equal(a->p1, b->p1) && assertion_equal(a->p2, b->p2) &&
         assertion_equal(a->p3, b->p3) && assertion_equal(a->p4, b->p4) && a->var == b->var &&
         expr_equal(a->expr, b->expr) && proof_equal(a->a, b->a) && proof_equal(a->b, b->b);
}

size_t proof_node_count(const ProofPtr& t) {
  if (!t) return 0;
  return 1 + proof_node_count(t->a) + proof_node_count(t->b);
}

// ---- certificate text ----------------------------------------------------

namespace {

void print_node(std::ostream& os, const ProofPtr& t) {
  switch (t->kind) {
    case RuleKind::RSkip:
      os << "(skip (" << pretty_assertion(t->p1) << "))";
      return;
    case RuleKind::RBreak:
      os << "(break (" << pretty_assertion(t->p1) << "))";
      return;
    case RuleKind::RContinue:
      os << "(continue (" << pretty_assertion(t->p1) << "))";
      return;
    case RuleKind::RAssign:
      os << "(assign " << t->var << " (" << pretty_expr(t->expr) << ") ("
         << pretty_assertion(t->p1) << "))";
      return;
    case RuleKind::RSeq:
      os << "(seq (" << pretty_assertion(t->p1) << ") ";
      print_node(os, t->a);
      os << ' ';
      print_node(os, t->b);
      os << ')';
      return;
    case RuleKind::RIf:
      os << "(if (" << pretty_expr(t->expr) << ") ";
      print_node(os, t->a);
      os << ' ';
      print_node(os, t->b);
      os << ')';
      return;
    case RuleKind::RLoop:
      os << "(loop (" << pretty_assertion(t->p1) << ") (" << pretty_assertion(t->p2) << ") ";
      print_node(os, t->a);
      os << ' ';
      print_node(os, t->b);
      os << ')';
      return;
    case RuleKind::RConseq:
      os << "(conseq (" << pretty_assertion(t->p1) << ") (" << pretty_assertion(t->p2) << ") ("
         << pretty_assertion(t->p3) << ") (" << pretty_assertion(t->p4) << ") ";
      print_node(os, t->a);
      os << ')';
      return;
  }
}

// Minimal s-expression reader for the certificate format. Groups opened by
// '(' right after a node keyword hold surface-syntax text (assertion or
// expression) which is handed to the main parser.
struct SexpReader {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit SexpReader(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) {
      if (src[pos] == '\n') { ++line; col = 1; } else ++col;
      ++pos;
    }
  }

  [[noreturn]] void err(const std::string& msg) { throw SyntaxError(msg, line, col); }

  void expect_char(char c) {
    skip_ws();
    if (pos >= src.size() || src[pos] != c) err(std::string("expected '") + c + "'");
    ++pos;
    ++col;
  }

  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           src[pos] != '(' && src[pos] != ')') {
      ++pos;
      ++col;
    }
    if (start == pos) err("expected a word");
    return src.substr(start, pos - start);
  }

  // Reads a balanced parenthesized group and returns the inner text.
  std::string group() {
    expect_char('(');
    size_t start = pos;
    int depth = 1;
    while (pos < src.size() && depth > 0) {
      char c = src[pos];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == '\n') { ++line; col = 1; } else ++col;
      ++pos;
    }
    if (depth != 0) err("unbalanced group");
    return src.substr(start, pos - 1 - start);
  }

  bool peek_rparen() {
    skip_ws();
    return pos < src.size() && src[pos] == ')';
  }
};

ProofPtr parse_node(SexpReader& r, const Footprint& fp) {
  r.expect_char('(');
  std::string head = r.word();
  auto assertion_group = [&] { return parse_assertion(r.group(), fp); };
  ProofPtr result;
  if (head == "skip") result = r_skip(assertion_group());
  else if (head == "break") result = r_break(assertion_group());
  else if (head == "continue") result = r_continue(assertion_group());
  else if (head == "assign") {
    std::string var = r.word();
    ExprPtr e = parse_expr(r.group());
    result = r_assign(var, e, assertion_group());
  } else if (head == "seq") {
    AssertionPtr mid = assertion_group();
    ProofPtr a = parse_node(r, fp);
    ProofPtr b = parse_node(r, fp);
    result = r_seq(mid, a, b);
  } else if (head == "if") {
    ExprPtr e = parse_expr(r.group());
    ProofPtr a = parse_node(r, fp);
    ProofPtr b = parse_node(r, fp);
    result = r_if(e, a, b);
  } else if (head == "loop") {
    AssertionPtr p = assertion_group();
    AssertionPtr i = assertion_group();
    ProofPtr a = parse_node(r, fp);
    ProofPtr b = parse_node(r, fp);
    result = r_loop(p, i, a, b);
  } else if (head == "conseq") {
    AssertionPtr p = assertion_group();
    AssertionPtr q = assertion_group();
    AssertionPtr rb = assertion_group();
    AssertionPtr rc = assertion_group();
    ProofPtr child = parse_node(r, fp);
    result = r_conseq(child, p, q, rb, rc);
  } else {
    r.err("unknown proof node '" + head + "'");
  }
  r.expect_char(')');
  return result;
}

} // namespace

std::string print_proof(const ProofPtr& t) {
  std::ostringstream os;
  print_node(os, t);
  return os.str();
}

ProofPtr parse_proof(const std::string& text, const Footprint& fp) {
  SexpReader r(text);
  ProofPtr t = parse_node(r, fp);
  r.skip_ws();
  if (r.pos != text.size()) r.err("trailing input after proof");
  return t;
}

std::string source_hash_of(const std::string& program_text) {
  // FNV-1a, hex
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : program_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string print_certificate(const Certificate& c) {
  std::ostringstream os;
  os << "(certificate\n  (footprint (vars";
  for (const auto& v : c.fp.vars()) os << ' ' << v;
  os << ") (modulus " << c.fp.modulus() << "))\n";
  os << "  (source-hash " << c.source_hash << ")\n  (tree ";
  print_node(os, c.tree);
  os << "))\n";
  return os.str();
}

Certificate parse_certificate(const std::string& text) {
  SexpReader r(text);
  r.expect_char('(');
  if (r.word() != "certificate") r.err("expected certificate");
  r.expect_char('(');
  if (r.word() != "footprint") r.err("expected footprint");
  r.expect_char('(');
  if (r.word() != "vars") r.err("expected vars");
  std::vector<std::string> vars;
  while (!r.peek_rparen()) vars.push_back(r.word());
  r.expect_char(')');
  r.expect_char('(');
  if (r.word() != "modulus") r.err("expected modulus");
  uint64_t m = std::stoull(r.word());
  r.expect_char(')');
  r.expect_char(')');
  Footprint fp(vars, m);
  r.expect_char('(');
  if (r.word() != "source-hash") r.err("expected source-hash");
  std::string hash = r.word();
  r.expect_char(')');
  r.expect_char('(');
  if (r.word() != "tree") r.err("expected tree");
  ProofPtr t = parse_node(r, fp);
  r.expect_char(')');
  r.expect_char(')');
  return Certificate{t, fp, hash};
}

} // namespace whilecf
