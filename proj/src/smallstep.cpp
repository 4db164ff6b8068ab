#include "whilecf/smallstep.hpp"

#include "whilecf/parser.hpp"

#include <sstream>

namespace whilecf {

Frame frame_seq(CmdPtr c) { return Frame{FrameKind::KSeq, std::move(c), nullptr}; }
Frame frame_loop1(CmdPtr body, CmdPtr incr) {
  return Frame{FrameKind::KLoop1, std::move(body), std::move(incr)};
}
Frame frame_loop2(CmdPtr body, CmdPtr incr) {
  return Frame{FrameKind::KLoop2, std::move(body), std::move(incr)};
}

bool frame_equal(const Frame& a, const Frame& b) {
  return a.kind == b.kind && cmd_equal(a.c1, b.c1) && cmd_equal(a.c2, b.c2);
}

KontPtr kont_empty() { return nullptr; }

KontPtr kont_push(Frame f, KontPtr rest) {
  auto k = std::make_shared<Kont>();
  k->top = std::move(f);
  k->rest = std::move(rest);
  return k;
}

size_t kont_depth(const KontPtr& k) {
  size_t n = 0;
  for (const Kont* p = k.get(); p; p = p->rest.get()) ++n;
  return n;
}

bool kont_equal(const KontPtr& a, const KontPtr& b) {
  const Kont *x = a.get(), *y = b.get();
  while (x && y) {
    if (x == y) return true;
    if (!frame_equal(x->top, y->top)) return false;
    x = x->rest.get();
    y = y->rest.get();
  }
  return x == y;
}

KontPtr kont_from_frames(const std::vector<Frame>& frames) {
  KontPtr k = nullptr;
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) k = kont_push(*it, k);
  return k;
}

std::string kont_to_string(const KontPtr& k) {
  std::ostringstream os;
  bool first = true;
  for (const Kont* p = k.get(); p; p = p->rest.get()) {
    if (!first) os << " . ";
    first = false;
    switch (p->top.kind) {
      case FrameKind::KSeq: os << "KSeq(" << pretty(p->top.c1) << ")"; break;
      case FrameKind::KLoop1:
        os << "KLoop1(" << pretty(p->top.c1) << "; " << pretty(p->top.c2) << ")";
        break;
      case FrameKind::KLoop2:
        os << "KLoop2(" << pretty(p->top.c1) << "; " << pretty(p->top.c2) << ")";
        break;
    }
  }
  if (first) os << "eps";
  return os.str();
}

std::string config_to_string(const Config& c, const Footprint& fp) {
  std::ostringstream os;
  os << '(' << pretty(c.cmd) << ", " << kont_to_string(c.kont) << ", "
     << state_to_string(c.state, fp) << ')';
  return os.str();
}

StepResult step(const Config& cfg, const Footprint& fp) {
  const CmdPtr& c = cfg.cmd;
  const KontPtr& k = cfg.kont;
  auto next = [&](CmdPtr c2, KontPtr k2, State s2) {
    StepResult r;
    r.kind = StepKind::Next;
    r.next = Config{std::move(c2), std::move(k2), std::move(s2)};
    return r;
  };
  auto stuck = [] {
    StepResult r;
    r.kind = StepKind::Stuck;
    return r;
  };
  switch (c->kind) {
    case CmdKind::Seq: return next(c->a, kont_push(frame_seq(c->b), k), cfg.state);
    case CmdKind::Assign: {
      auto v = eval_expr(c->expr, cfg.state, fp);
      if (!v) return stuck();
      return next(cmd_skip(), k, state_set(cfg.state, fp, c->var, *v));
    }
    case CmdKind::If: {
      auto v = eval_expr(c->expr, cfg.state, fp);
      if (!v) return stuck();
      return next(*v != 0 ? c->a : c->b, k, cfg.state);
    }
    case CmdKind::For:
      // load the body followed by an explicit continue under a KLoop1 frame
      return next(cmd_seq(c->a, cmd_continue()), kont_push(frame_loop1(c->a, c->b), k),
                  cfg.state);
    case CmdKind::Skip: {
      if (!k) {
        StepResult r;
        r.kind = StepKind::Terminal;
        r.ek = ExitKind::Normal;
        return r;
      }
      const Frame& f = k->top;
      if (f.kind == FrameKind::KSeq) return next(f.c1, k->rest, cfg.state);
      if (f.kind == FrameKind::KLoop2)
        return next(cmd_seq(f.c1, cmd_continue()), kont_push(frame_loop1(f.c1, f.c2), k->rest),
                    cfg.state);
      return stuck(); // skip meeting KLoop1 has no rule
    }
    case CmdKind::Break: {
      if (!k) {
        StepResult r;
        r.kind = StepKind::Terminal;
        r.ek = ExitKind::Brk;
        return r;
      }
      const Frame& f = k->top;
      if (f.kind == FrameKind::KSeq) return next(cmd_break(), k->rest, cfg.state);
      // break leaves the loop whether it was in the body or the increment
      return next(cmd_skip(), k->rest, cfg.state);
    }
    case CmdKind::Continue: {
      if (!k) {
        StepResult r;
        r.kind = StepKind::Terminal;
        r.ek = ExitKind::Con;
        return r;
      }
      const Frame& f = k->top;
      if (f.kind == FrameKind::KSeq) return next(cmd_continue(), k->rest, cfg.state);
      if (f.kind == FrameKind::KLoop1)
        return next(f.c2, kont_push(frame_loop2(f.c1, f.c2), k->rest), cfg.state);
      return stuck(); // continue meeting KLoop2 has no rule
    }
  }
  return stuck();
}

Outcome run_small(Config cfg, const Footprint& fp, uint64_t fuel) {
  return run_small_counted(std::move(cfg), fp, fuel, nullptr);
}

Outcome run_small_counted(Config cfg, const Footprint& fp, uint64_t fuel, uint64_t* steps) {
  uint64_t n = 0;
  while (true) {
    StepResult r = step(cfg, fp);
    if (r.kind == StepKind::Terminal) {
      if (steps) *steps = n;
      return Outcome::terminated(r.ek, cfg.state);
    }
    if (r.kind == StepKind::Stuck) {
      if (steps) *steps = n;
      return Outcome::error();
    }
    if (n >= fuel) {
      if (steps) *steps = n;
      return Outcome::out_of_fuel();
    }
    cfg = std::move(r.next);
    ++n;
  }
}

bool wp_indexed(const State& sigma, const Env& env, const CmdPtr& c, const KontPtr& k,
                const Posts& posts, const Footprint& fp, uint64_t n) {
  CmdPtr cc = c;
  KontPtr kk = k;
  State st = sigma;
  for (uint64_t i = 0; i < n; ++i) {
    Config cfg{cc, kk, st};
    StepResult r = step(cfg, fp);
    if (r.kind == StepKind::Terminal) return satisfies(st, env, posts.for_exit(r.ek), fp);
    if (r.kind == StepKind::Stuck) return false;
    cc = r.next.cmd;
    kk = r.next.kont;
    st = std::move(r.next.state);
  }
  return true; // index exhausted
}

bool safe_indexed(const CmdPtr& c, const KontPtr& k, const State& sigma, const Footprint& fp,
                  uint64_t n) {
  CmdPtr cc = c;
  KontPtr kk = k;
  State st = sigma;
  for (uint64_t i = 0; i < n; ++i) {
    Config cfg{cc, kk, st};
    StepResult r = step(cfg, fp);
    if (r.kind == StepKind::Terminal) return true;
    if (r.kind == StepKind::Stuck) return false;
    cc = r.next.cmd;
    kk = r.next.kont;
    st = std::move(r.next.state);
  }
  return true;
}

namespace {

std::vector<std::string> triple_logic_vars(const Triple& t) {
  std::vector<std::string> lv;
  collect_free_logic_vars(t.pre, lv);
  collect_free_logic_vars(t.post, lv);
  collect_free_logic_vars(t.post_brk, lv);
  collect_free_logic_vars(t.post_con, lv);
  return lv;
}

} // namespace

Verdict valid_wp(const Triple& t, const Footprint& fp, uint64_t fuel, uint64_t cap) {
  std::vector<State> states = enumerate_states(fp, cap);
  std::vector<std::string> lvars = triple_logic_vars(t);
  uint64_t budget = states.size();
  for (size_t i = 0; i < lvars.size(); ++i) {
    budget *= fp.modulus();
    if (budget > cap) throw CapExceeded("validity enumeration budget exceeded");
  }
  Posts posts{t.post, t.post_brk, t.post_con};
  Verdict bad = Verdict::pass();
  bool found = false;
  for_each_env(lvars, fp, [&](const Env& env) {
    for (const State& s : states) {
      if (!satisfies(s, env, t.pre, fp)) continue;
      if (!wp_indexed(s, env, t.cmd, nullptr, posts, fp, fuel)) {
        bad = Verdict::counterexample(s, env, "weakest precondition fails");
        found = true;
        return false;
      }
    }
    return true;
  });
  return found ? bad : Verdict::pass();
}

Verdict guards(const AssertionPtr& p, const CmdPtr& c, const KontPtr& k, const Footprint& fp,
               uint64_t fuel, uint64_t cap) {
  std::vector<State> states = enumerate_states(fp, cap);
  std::vector<std::string> lvars = free_logic_vars(p);
  Verdict bad = Verdict::pass();
  bool found = false;
  for_each_env(lvars, fp, [&](const Env& env) {
    for (const State& s : states) {
      if (!satisfies(s, env, p, fp)) continue;
      if (!safe_indexed(c, k, s, fp, fuel)) {
        bad = Verdict::counterexample(s, env, "guarded execution gets stuck");
        found = true;
        return false;
      }
    }
    return true;
  });
  return found ? bad : Verdict::pass();
}

namespace {

bool guards_under_env(const AssertionPtr& p, const CmdPtr& c, const KontPtr& k, const Env& env,
                      const std::vector<State>& states, const Footprint& fp, uint64_t fuel) {
  for (const State& s : states) {
    if (!satisfies(s, env, p, fp)) continue;
    if (!safe_indexed(c, k, s, fp, fuel)) return false;
  }
  return true;
}

} // namespace

Verdict valid_cont(const Triple& t, const Footprint& fp, uint64_t fuel,
                   const std::vector<KontPtr>& family, uint64_t cap) {
  std::vector<State> states = enumerate_states(fp, cap);
  std::vector<std::string> lvars = triple_logic_vars(t);
  uint64_t budget = states.size() * (family.size() ? family.size() : 1);
  for (size_t i = 0; i < lvars.size(); ++i) {
    budget *= fp.modulus();
    if (budget > cap) throw CapExceeded("continuation validity budget exceeded");
  }
  Verdict bad = Verdict::pass();
  bool found = false;
  for_each_env(lvars, fp, [&](const Env& env) {
    for (const KontPtr& k : family) {
      bool premise = guards_under_env(t.post, cmd_skip(), k, env, states, fp, fuel) &&
                     guards_under_env(t.post_brk, cmd_break(), k, env, states, fp, fuel) &&
                     guards_under_env(t.post_con, cmd_continue(), k, env, states, fp, fuel);
      if (!premise) continue;
      for (const State& s : states) {
        if (!satisfies(s, env, t.pre, fp)) continue;
        if (!safe_indexed(t.cmd, k, s, fp, fuel)) {
          bad = Verdict::counterexample(s, env, "pre fails to guard under " + kont_to_string(k));
          found = true;
          return false;
        }
      }
    }
    return true;
  });
  if (found) return bad;
  Verdict v = Verdict::pass();
  v.bounded = true; // the family is a finite stand-in for all continuations
  return v;
}

std::vector<CmdPtr> enumerate_small_commands(const Footprint& fp, size_t size) {
  // Atomic expressions for enumerated commands: 0, 1, and each variable.
  std::vector<ExprPtr> atoms;
  atoms.push_back(expr_const(0));
  atoms.push_back(expr_const(1));
  for (const auto& v : fp.vars()) atoms.push_back(expr_var(v));

  std::vector<std::vector<CmdPtr>> by_size(size + 1);
  if (size >= 1) {
    by_size[1] = {cmd_skip(), cmd_break(), cmd_continue()};
  }
  if (size >= 2) {
    for (const auto& v : fp.vars())
      for (const auto& e : atoms) by_size[2].push_back(cmd_assign(v, e));
  }
  for (size_t n = 3; n <= size; ++n) {
    for (size_t l = 1; l + 2 <= n; ++l) {
      size_t r = n - 1 - l;
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[r]) {
          by_size[n].push_back(cmd_seq(a, b));
          by_size[n].push_back(cmd_for(a, b));
          for (const auto& e : atoms) by_size[n].push_back(cmd_if(e, a, b));
        }
    }
  }
  std::vector<CmdPtr> out;
  for (size_t n = 1; n <= size; ++n)
    out.insert(out.end(), by_size[n].begin(), by_size[n].end());
  return out;
}

std::vector<KontPtr> enumerate_continuations(const Footprint& fp, size_t depth, size_t size,
                                             uint64_t cap) {
  std::vector<CmdPtr> cmds = enumerate_small_commands(fp, size);
  std::vector<Frame> frames;
  for (const auto& c : cmds) frames.push_back(frame_seq(c));
  for (const auto& a : cmds)
    for (const auto& b : cmds) {
      frames.push_back(frame_loop1(a, b));
      frames.push_back(frame_loop2(a, b));
    }

  std::vector<KontPtr> out{kont_empty()};
  std::vector<KontPtr> level{kont_empty()};
  for (size_t d = 1; d <= depth; ++d) {
    std::vector<KontPtr> next;
    for (const auto& rest : level)
      for (const auto& f : frames) {
        next.push_back(kont_push(f, rest));
        if (out.size() + next.size() > cap)
          throw CapExceeded("continuation family exceeds cap");
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

bool config_has_no_continue(const CmdPtr& c, const KontPtr& k) {
  // A continue only reaches the empty stack from the region below the
  // bottom-most loop frame; loop frames absorb everything issued above them.
  const Kont* bottom_loop = nullptr;
  for (const Kont* p = k.get(); p; p = p->rest.get())
    if (p->top.kind != FrameKind::KSeq) bottom_loop = p;
  if (!bottom_loop && has_toplevel_continue(c)) return false;
  const Kont* start = bottom_loop ? bottom_loop->rest.get() : k.get();
  for (const Kont* p = start; p; p = p->rest.get())
    if (has_toplevel_continue(p->top.c1)) return false;
  return true;
}

} // namespace whilecf
