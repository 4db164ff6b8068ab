#include "whilecf/parser.hpp"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

namespace whilecf {

namespace {

enum class Tok {
  Ident, Number,
  SemiSemi, Assign, Eq, Ne, Lt, Le, Gt, Ge,
  Plus, Minus, Star, Slash,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Colon, Dot, Comma,
  AndA, OrA, Arrow, // the assertion connectives /\ \/ ->
  End
};

struct Token {
  Tok kind;
  std::string text;
  uint64_t number = 0;
  int line = 1;
  int col = 1;
};

struct Lexer {
  std::vector<Token> toks;

  explicit Lexer(const std::string& src) {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string t, size_t adv) {
      toks.push_back({k, std::move(t), 0, line, col});
      col += static_cast<int>(adv);
      i += adv;
    };
    while (i < src.size()) {
      char c = src[i];
      if (c == '\n') { ++line; col = 1; ++i; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
      if (c == '#') { // comment to end of line
        while (i < src.size() && src[i] != '\n') { ++i; ++col; }
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
          ++j;
        push(Tok::Ident, src.substr(i, j - i), j - i);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        Token t{Tok::Number, src.substr(i, j - i), 0, line, col};
        t.number = std::stoull(t.text);
        toks.push_back(t);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      auto two = [&](char a, char b) {
        return c == a && i + 1 < src.size() && src[i + 1] == b;
      };
      if (two(';', ';')) { push(Tok::SemiSemi, ";;", 2); continue; }
      if (two('=', '=')) { push(Tok::Eq, "==", 2); continue; }
      if (two('!', '=')) { push(Tok::Ne, "!=", 2); continue; }
      if (two('<', '=')) { push(Tok::Le, "<=", 2); continue; }
      if (two('>', '=')) { push(Tok::Ge, ">=", 2); continue; }
      if (two('-', '>')) { push(Tok::Arrow, "->", 2); continue; }
      if (two('/', '\\')) { push(Tok::AndA, "/\\", 2); continue; }
      if (two('\\', '/')) { push(Tok::OrA, "\\/", 2); continue; }
      switch (c) {
        case '=': push(Tok::Assign, "=", 1); continue;
        case '<': push(Tok::Lt, "<", 1); continue;
        case '>': push(Tok::Gt, ">", 1); continue;
        case '+': push(Tok::Plus, "+", 1); continue;
        case '-': push(Tok::Minus, "-", 1); continue;
        case '*': push(Tok::Star, "*", 1); continue;
        case '/': push(Tok::Slash, "/", 1); continue;
        case '(': push(Tok::LParen, "(", 1); continue;
        case ')': push(Tok::RParen, ")", 1); continue;
        case '[': push(Tok::LBracket, "[", 1); continue;
        case ']': push(Tok::RBracket, "]", 1); continue;
        case '{': push(Tok::LBrace, "{", 1); continue;
        case '}': push(Tok::RBrace, "}", 1); continue;
        case ':': push(Tok::Colon, ":", 1); continue;
        case '.': push(Tok::Dot, ".", 1); continue;
        case ',': push(Tok::Comma, ",", 1); continue;
        default: throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    toks.push_back({Tok::End, "", 0, line, col});
  }
};

class Parser {
public:
  Parser(const std::string& src, const Footprint* fp) : lex_(src), fp_(fp) {}

  // ---- commands ------------------------------------------------------

  CmdPtr command() { return seq_cmd(); }

  AnnPtr annotated() { return seq_ann(); }

  // ---- expressions ---------------------------------------------------

  ExprPtr expr() { return or_expr(); }

  // ---- assertions ----------------------------------------------------

  AssertionPtr assertion() { return implies_a(); }

  void expect_end() {
    if (!at(Tok::End)) err("trailing input");
  }

  bool at(Tok k) const { return lex_.toks[pos_].kind == k; }
  bool at_ident(const char* s) const {
    return at(Tok::Ident) && lex_.toks[pos_].text == s;
  }
  const Token& cur() const { return lex_.toks[pos_]; }

  [[noreturn]] void err(const std::string& msg) const {
    const Token& t = cur();
    throw SyntaxError(msg + (t.kind == Tok::End ? " (at end of input)" : " near '" + t.text + "'"),
                      t.line, t.col);
  }

  SpecFile spec_file() {
    expect_kw("vars");
    std::vector<std::string> vars;
    while (at(Tok::Ident) && cur().text != "modulus") vars.push_back(ident());
    expect_kw("modulus");
    if (!at(Tok::Number)) err("expected modulus value");
    uint64_t m = advance().number;
    Footprint fp(vars, m);
    fp_ = &fp;

    AssertionPtr pre, post, post_brk, post_con;
    auto directive = [&](const char* name) -> AssertionPtr {
      expect_kw(name);
      expect(Tok::Colon, "':'");
      return assertion();
    };
    pre = directive("pre");
    post = directive("post");
    if (at_ident("post_break")) post_brk = directive("post_break");
    if (at_ident("post_continue")) post_con = directive("post_continue");
    expect_end();
    fp_ = nullptr;
    return SpecFile{fp, pre, post, post_brk ? post_brk : a_false(),
                    post_con ? post_con : a_false()};
  }

private:
  Lexer lex_;
  const Footprint* fp_;
  size_t pos_ = 0;

  const Token& advance() { return lex_.toks[pos_++]; }
  bool accept(Tok k) {
    if (at(k)) { ++pos_; return true; }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) err(std::string("expected ") + what);
  }
  bool accept_kw(const char* s) {
    if (at_ident(s)) { ++pos_; return true; }
    return false;
  }
  void expect_kw(const char* s) {
    if (!accept_kw(s)) err(std::string("expected '") + s + "'");
  }

  static bool is_keyword(const std::string& s) {
    static const char* kws[] = {"skip", "if", "then", "else", "for", "break", "continue",
                                "assert", "inv", "incr_inv", "and", "or", "not", "mod",
                                "true", "false", "exists", "forall"};
    for (const char* k : kws)
      if (s == k) return true;
    return false;
  }

  std::string ident() {
    if (!at(Tok::Ident) || is_keyword(cur().text)) err("expected identifier");
    return advance().text;
  }

  CmdPtr seq_cmd() {
    CmdPtr left = atomic_cmd();
    if (accept(Tok::SemiSemi)) return cmd_seq(left, seq_cmd());
    return left;
  }

  CmdPtr atomic_cmd() {
    if (accept_kw("skip")) return cmd_skip();
    if (accept_kw("break")) return cmd_break();
    if (accept_kw("continue")) return cmd_continue();
    if (accept_kw("if")) {
      ExprPtr c = expr();
      expect_kw("then");
      CmdPtr t = atomic_cmd();
      expect_kw("else");
      CmdPtr e = atomic_cmd();
      return cmd_if(c, t, e);
    }
    if (accept_kw("for")) {
      if (at(Tok::LBrace)) err("loop annotations are not allowed in plain programs");
      expect(Tok::LParen, "'('");
      expect(Tok::SemiSemi, "';;'");
      CmdPtr incr = seq_cmd();
      expect(Tok::RParen, "')'");
      CmdPtr body = atomic_cmd();
      return cmd_for(body, incr);
    }
    if (at_ident("assert")) err("assert is not allowed in plain programs");
    if (accept(Tok::LParen)) {
      CmdPtr c = seq_cmd();
      expect(Tok::RParen, "')'");
      return c;
    }
    if (at(Tok::Ident) && !is_keyword(cur().text)) {
      std::string name = advance().text;
      expect(Tok::Assign, "'='");
      return cmd_assign(name, expr());
    }
    err("expected command");
  }

  AnnPtr seq_ann() {
    AnnPtr left = atomic_ann();
    if (accept(Tok::SemiSemi)) return ann_seq(left, seq_ann());
    return left;
  }

  AnnPtr atomic_ann() {
    if (accept_kw("skip")) return ann_skip();
    if (accept_kw("break")) return ann_break();
    if (accept_kw("continue")) return ann_continue();
    if (accept_kw("assert")) return ann_assert(assertion());
    if (accept_kw("if")) {
      ExprPtr c = expr();
      expect_kw("then");
      AnnPtr t = atomic_ann();
      expect_kw("else");
      AnnPtr e = atomic_ann();
      return ann_if(c, t, e);
    }
    if (accept_kw("for")) {
      AssertionPtr body_pre, incr_pre;
      if (accept(Tok::LBrace)) {
        expect_kw("inv");
        expect(Tok::Colon, "':'");
        body_pre = assertion();
        expect(Tok::RBrace, "'}'");
        expect(Tok::LBrace, "'{'");
        expect_kw("incr_inv");
        expect(Tok::Colon, "':'");
        incr_pre = assertion();
        expect(Tok::RBrace, "'}'");
      }
      expect(Tok::LParen, "'('");
      expect(Tok::SemiSemi, "';;'");
      AnnPtr incr = seq_ann();
      expect(Tok::RParen, "')'");
      AnnPtr body = atomic_ann();
      return ann_for(body, incr, body_pre, incr_pre);
    }
    if (accept(Tok::LParen)) {
      AnnPtr c = seq_ann();
      expect(Tok::RParen, "')'");
      return c;
    }
    if (at(Tok::Ident) && !is_keyword(cur().text)) {
      std::string name = advance().text;
      expect(Tok::Assign, "'='");
      return ann_assign(name, expr());
    }
    err("expected command");
  }

  ExprPtr or_expr() {
    ExprPtr e = and_expr();
    while (accept_kw("or")) e = expr_binary(BinOp::Or, e, and_expr());
    return e;
  }

  ExprPtr and_expr() {
    ExprPtr e = cmp_expr();
    while (accept_kw("and")) e = expr_binary(BinOp::And, e, cmp_expr());
    return e;
  }

  ExprPtr cmp_expr() {
    ExprPtr e = add_expr();
    if (accept(Tok::Eq)) return expr_binary(BinOp::Eq, e, add_expr());
    if (accept(Tok::Ne)) return expr_binary(BinOp::Ne, e, add_expr());
    if (accept(Tok::Lt)) return expr_binary(BinOp::Lt, e, add_expr());
    if (accept(Tok::Le)) return expr_binary(BinOp::Le, e, add_expr());
    // > and >= are parsed as the swapped core comparisons.
    if (accept(Tok::Gt)) return expr_binary(BinOp::Lt, add_expr(), e);
    if (accept(Tok::Ge)) return expr_binary(BinOp::Le, add_expr(), e);
    return e;
  }

  ExprPtr add_expr() {
    ExprPtr e = mul_expr();
    while (true) {
      if (accept(Tok::Plus)) e = expr_binary(BinOp::Add, e, mul_expr());
      else if (accept(Tok::Minus)) e = expr_binary(BinOp::Sub, e, mul_expr());
      else return e;
    }
  }

  ExprPtr mul_expr() {
    ExprPtr e = unary_expr();
    while (true) {
      if (accept(Tok::Star)) e = expr_binary(BinOp::Mul, e, unary_expr());
      else if (accept(Tok::Slash)) e = expr_binary(BinOp::Div, e, unary_expr());
      else if (accept_kw("mod")) e = expr_binary(BinOp::Mod, e, unary_expr());
      else return e;
    }
  }

  ExprPtr unary_expr() {
    if (accept(Tok::Minus)) return expr_unary(UnOp::Neg, unary_expr());
    if (accept_kw("not")) return expr_unary(UnOp::Not, unary_expr());
    return primary_expr();
  }

  ExprPtr primary_expr() {
    if (at(Tok::Number)) return expr_const(advance().number);
    if (at(Tok::Ident) && !is_keyword(cur().text)) {
      std::string name = advance().text;
      if (fp_ && !fp_->has_var(name)) return expr_logic_ref(name);
      return expr_var(name);
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    err("expected expression");
  }

  AssertionPtr implies_a() {
    AssertionPtr a = or_a();
    if (accept(Tok::Arrow)) return a_implies(a, implies_a());
    return a;
  }

  AssertionPtr or_a() {
    AssertionPtr a = and_a();
    while (accept(Tok::OrA)) a = a_or(a, and_a());
    return a;
  }

  AssertionPtr and_a() {
    AssertionPtr a = not_a();
    while (accept(Tok::AndA)) a = a_and(a, not_a());
    return a;
  }

  AssertionPtr not_a() {
    if (accept_kw("not")) return a_not(not_a());
    return atom_a();
  }

  AssertionPtr atom_a() {
    if (accept_kw("true")) return a_true();
    if (accept_kw("false")) return a_false();
    if (at_ident("exists") || at_ident("forall")) {
      bool ex = advance().text == "exists";
      std::string v = ident();
      if (fp_ && fp_->has_var(v))
        err("quantifier binds program variable '" + v + "'");
      expect(Tok::Dot, "'.'");
      AssertionPtr body = assertion();
      return ex ? a_exists(v, body) : a_forall(v, body);
    }
    if (at(Tok::LParen)) {
      // "(" may open a grouped assertion or a parenthesized term; try the
      // assertion reading first and fall back on the term reading.
      size_t save = pos_;
      ++pos_;
      try {
        AssertionPtr inner = assertion();
        expect(Tok::RParen, "')'");
        if (at(Tok::Assign) || at(Tok::Le) || at(Tok::Lt) || at(Tok::Plus) ||
            at(Tok::Minus) || at(Tok::Star))
          throw SyntaxError("term context", cur().line, cur().col);
        return inner;
      } catch (const SyntaxError&) {
        pos_ = save;
        return cmp_atom();
      }
    }
    return cmp_atom();
  }

  AssertionPtr cmp_atom() {
    ATermPtr t = aterm_add();
    if (accept(Tok::Assign)) return a_cmp(CmpRel::Eq, t, aterm_add());
    if (accept(Tok::Le)) return a_cmp(CmpRel::Le, t, aterm_add());
    if (accept(Tok::Lt)) return a_cmp(CmpRel::Lt, t, aterm_add());
    err("expected comparison");
  }

  ATermPtr aterm_add() {
    ATermPtr t = aterm_mul();
    while (true) {
      if (accept(Tok::Plus)) t = aterm_arith(AArith::Add, t, aterm_mul());
      else if (accept(Tok::Minus)) t = aterm_arith(AArith::Sub, t, aterm_mul());
      else return t;
    }
  }

  ATermPtr aterm_mul() {
    ATermPtr t = aterm_prim();
    while (accept(Tok::Star)) t = aterm_arith(AArith::Mul, t, aterm_prim());
    return t;
  }

  ATermPtr aterm_prim() {
    if (at(Tok::Number)) return aterm_lit(advance().number);
    if (accept(Tok::LBracket)) {
      ExprPtr e = expr();
      expect(Tok::RBracket, "']'");
      return aterm_prog(e);
    }
    if (at(Tok::Ident) && !is_keyword(cur().text)) {
      std::string name = advance().text;
      if (fp_ && fp_->has_var(name))
        err("program variable '" + name + "' must appear inside [..]");
      return aterm_lvar(name);
    }
    if (accept(Tok::LParen)) {
      ATermPtr t = aterm_add();
      expect(Tok::RParen, "')'");
      return t;
    }
    err("expected term");
  }
};

} // namespace

CmdPtr parse_command(const std::string& text) {
  Parser p(text, nullptr);
  CmdPtr c = p.command();
  p.expect_end();
  return c;
}

AnnPtr parse_annotated_command(const std::string& text, const Footprint& fp) {
  Parser p(text, &fp);
  AnnPtr c = p.annotated();
  p.expect_end();
  return c;
}

ExprPtr parse_expr(const std::string& text) {
  Parser p(text, nullptr);
  ExprPtr e = p.expr();
  p.expect_end();
  return e;
}

AssertionPtr parse_assertion(const std::string& text, const Footprint& fp) {
  Parser p(text, &fp);
  AssertionPtr a = p.assertion();
  p.expect_end();
  return a;
}

// ---- pretty printers ---------------------------------------------------

namespace {

int expr_prec(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Const:
    case ExprKind::Var:
    case ExprKind::LogicRef: return 7;
    case ExprKind::Unary: return 6;
    case ExprKind::Binary:
      switch (e->bin) {
        case BinOp::Or: return 1;
        case BinOp::And: return 2;
        case BinOp::Eq:
        case BinOp::Ne:
        case BinOp::Lt:
        case BinOp::Le: return 3;
        case BinOp::Add:
        case BinOp::Sub: return 4;
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod: return 5;
      }
  }
  return 7;
}

const char* bin_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "mod";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
  }
  return "?";
}

void print_expr(std::ostream& os, const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Const: os << e->value; return;
    case ExprKind::Var:
    case ExprKind::LogicRef: os << e->name; return;
    case ExprKind::Unary: {
      os << (e->un == UnOp::Neg ? "-" : "not ");
      bool paren = expr_prec(e->a) < 6;
      if (paren) os << '(';
      print_expr(os, e->a);
      if (paren) os << ')';
      return;
    }
    case ExprKind::Binary: {
      int prec = expr_prec(e);
      bool lparen = expr_prec(e->a) < prec;
      // comparisons are non-associative: equal precedence on either side
      // needs parentheses to re-parse identically
      bool rparen = expr_prec(e->b) <= prec;
      if (prec == 3) lparen = expr_prec(e->a) <= prec;
      if (lparen) os << '(';
      print_expr(os, e->a);
      if (lparen) os << ')';
      os << ' ' << bin_name(e->bin) << ' ';
      if (rparen) os << '(';
      print_expr(os, e->b);
      if (rparen) os << ')';
      return;
    }
  }
}

bool cmd_is_seq(const CmdPtr& c) { return c && c->kind == CmdKind::Seq; }

void print_cmd(std::ostream& os, const CmdPtr& c) {
  switch (c->kind) {
    case CmdKind::Skip: os << "skip"; return;
    case CmdKind::Break: os << "break"; return;
    case CmdKind::Continue: os << "continue"; return;
    case CmdKind::Assign:
      os << c->var << " = ";
      print_expr(os, c->expr);
      return;
    case CmdKind::Seq:
      if (cmd_is_seq(c->a)) {
        os << '(';
        print_cmd(os, c->a);
        os << ')';
      } else {
        print_cmd(os, c->a);
      }
      os << " ;; ";
      print_cmd(os, c->b);
      return;
    case CmdKind::If: {
      os << "if ";
      print_expr(os, c->expr);
      os << " then ";
      if (cmd_is_seq(c->a)) { os << '('; print_cmd(os, c->a); os << ')'; }
      else print_cmd(os, c->a);
      os << " else ";
      if (cmd_is_seq(c->b)) { os << '('; print_cmd(os, c->b); os << ')'; }
      else print_cmd(os, c->b);
      return;
    }
    case CmdKind::For: {
      os << "for(;; ";
      print_cmd(os, c->b);
      os << ") ";
      if (cmd_is_seq(c->a)) { os << '('; print_cmd(os, c->a); os << ')'; }
      else print_cmd(os, c->a);
      return;
    }
  }
}

int aterm_prec(const ATermPtr& t) {
  if (t->kind == ATermKind::Arith) return t->op == AArith::Mul ? 7 : 6;
  return 8;
}

void print_aterm(std::ostream& os, const ATermPtr& t) {
  switch (t->kind) {
    case ATermKind::LVar: os << t->name; return;
    case ATermKind::Lit: os << t->value; return;
    case ATermKind::Prog:
      os << '[';
      print_expr(os, t->prog);
      os << ']';
      return;
    case ATermKind::Arith: {
      int prec = aterm_prec(t);
      bool lparen = aterm_prec(t->a) < prec;
      bool rparen = aterm_prec(t->b) <= prec;
      if (lparen) os << '(';
      print_aterm(os, t->a);
      if (lparen) os << ')';
      os << ' ' << (t->op == AArith::Add ? "+" : t->op == AArith::Sub ? "-" : "*") << ' ';
      if (rparen) os << '(';
      print_aterm(os, t->b);
      if (rparen) os << ')';
      return;
    }
  }
}

// Precedence: -> 1 (right), \/ 2, /\ 3, not 4, atoms 5. Quantifiers print
// with a trailing max-right body, so they get parenthesized in any operand
// position.
int assertion_prec(const AssertionPtr& a) {
  switch (a->kind) {
    case AKind::Forall:
    case AKind::Exists: return 0;
    case AKind::Implies: return 1;
    case AKind::Or: return 2;
    case AKind::And: return 3;
    case AKind::Not: return 4;
    default: return 5;
  }
}

const char* cmp_rel_name(CmpRel r) {
  switch (r) {
    case CmpRel::Eq: return "=";
    case CmpRel::Le: return "<=";
    case CmpRel::Lt: return "<";
  }
  return "?";
}

void print_assertion(std::ostream& os, const AssertionPtr& a) {
  switch (a->kind) {
    case AKind::True: os << "true"; return;
    case AKind::False: os << "false"; return;
    case AKind::Cmp:
      print_aterm(os, a->ta);
      os << ' ' << cmp_rel_name(a->rel) << ' ';
      print_aterm(os, a->tb);
      return;
    case AKind::Not: {
      os << "not ";
      bool paren = assertion_prec(a->a) < 4;
      if (paren) os << '(';
      print_assertion(os, a->a);
      if (paren) os << ')';
      return;
    }
    case AKind::And:
    case AKind::Or:
    case AKind::Implies: {
      int prec = assertion_prec(a);
      bool right_assoc = a->kind == AKind::Implies;
      bool lparen = right_assoc ? assertion_prec(a->a) <= prec : assertion_prec(a->a) < prec;
      bool rparen = right_assoc ? assertion_prec(a->b) < prec : assertion_prec(a->b) <= prec;
      if (lparen) os << '(';
      print_assertion(os, a->a);
      if (lparen) os << ')';
      os << ' '
         << (a->kind == AKind::And ? "/\\" : a->kind == AKind::Or ? "\\/" : "->") << ' ';
      if (rparen) os << '(';
      print_assertion(os, a->b);
      if (rparen) os << ')';
      return;
    }
    case AKind::Forall:
    case AKind::Exists:
      os << (a->kind == AKind::Forall ? "forall " : "exists ") << a->var << ". ";
      print_assertion(os, a->a);
      return;
  }
}

bool ann_is_seq(const AnnPtr& c) { return c && c->kind == AnnKind::Seq; }

void print_ann(std::ostream& os, const AnnPtr& c) {
  switch (c->kind) {
    case AnnKind::Skip: os << "skip"; return;
    case AnnKind::Break: os << "break"; return;
    case AnnKind::Continue: os << "continue"; return;
    case AnnKind::MidAssert:
      os << "assert ";
      print_assertion(os, c->mid);
      return;
    case AnnKind::Assign:
      os << c->var << " = ";
      print_expr(os, c->expr);
      return;
    case AnnKind::Seq:
      if (ann_is_seq(c->a)) { os << '('; print_ann(os, c->a); os << ')'; }
      else print_ann(os, c->a);
      os << " ;; ";
      print_ann(os, c->b);
      return;
    case AnnKind::If:
      os << "if ";
      print_expr(os, c->expr);
      os << " then ";
      if (ann_is_seq(c->a)) { os << '('; print_ann(os, c->a); os << ')'; }
      else print_ann(os, c->a);
      os << " else ";
      if (ann_is_seq(c->b)) { os << '('; print_ann(os, c->b); os << ')'; }
      else print_ann(os, c->b);
      return;
    case AnnKind::ForAnn:
      os << "for";
      if (c->body_pre || c->incr_pre) {
        os << " {inv: ";
        print_assertion(os, c->body_pre ? c->body_pre : a_true());
        os << "} {incr_inv: ";
        print_assertion(os, c->incr_pre ? c->incr_pre : a_true());
        os << "}";
      }
      os << "(;; ";
      print_ann(os, c->b);
      os << ") ";
      if (ann_is_seq(c->a)) { os << '('; print_ann(os, c->a); os << ')'; }
      else print_ann(os, c->a);
      return;
  }
}

} // namespace

std::string pretty(const CmdPtr& c) {
  std::ostringstream os;
  print_cmd(os, c);
  return os.str();
}

std::string pretty_expr(const ExprPtr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string pretty_assertion(const AssertionPtr& a) {
  std::ostringstream os;
  print_assertion(os, a);
  return os.str();
}

std::string pretty_annotated(const AnnPtr& c) {
  std::ostringstream os;
  print_ann(os, c);
  return os.str();
}

SpecFile parse_spec_file(const std::string& text) {
  Parser p(text, nullptr);
  return p.spec_file();
}

std::string pretty_spec_file(const SpecFile& s) {
  std::ostringstream os;
  os << "vars";
  for (const auto& v : s.fp.vars()) os << ' ' << v;
  os << "\nmodulus " << s.fp.modulus() << "\n";
  os << "pre: " << pretty_assertion(s.pre) << "\n";
  os << "post: " << pretty_assertion(s.post) << "\n";
  os << "post_break: " << pretty_assertion(s.post_brk) << "\n";
  os << "post_continue: " << pretty_assertion(s.post_con) << "\n";
  return os.str();
}

} // namespace whilecf
