"""Smoke tests for the _core extension module."""

import _core as core


def fp(vars=("x", "y", "z"), modulus=8):
    return core.Footprint(list(vars), modulus)


def test_parse_and_run():
    assert core.parse_program("skip ;; skip") == "skip ;; skip"
    out_big = core.run_big("x = x + 1", fp(), {"x": 1})
    out_small = core.run_small("x = x + 1", fp(), {"x": 1})
    assert out_big == out_small
    assert "normal" in out_big
    assert core.run_big("z = x / y", fp(), {"x": 4, "y": 0}) == "Error"


def test_eval_and_satisfaction():
    assert core.eval_expr("x + y", fp(), {"x": 5, "y": 6}) == 3
    assert core.eval_expr("x / y", fp(), {"x": 1, "y": 0}) is None
    assert core.satisfies({"x": 4}, {}, "[x] = 4", fp(("x",)))
    assert core.satisfies({"x": 6, "y": 2}, {}, "exists n. [x] = n * [y]", fp(("x", "y")))


def test_entailment():
    v = core.entails("[x] = 1 /\\ [y] = 2", "[x] = 1", fp(("x", "y"), 4))
    assert v["holds"]
    v = core.entails("[x] <= 2", "[x] = 1", fp(("x",), 4))
    assert v["kind"] == "counterexample"


def test_oracles_and_refinement():
    spec = "vars x\nmodulus 4\npre: [x] = 0\npost: [x] = 3\n"
    program = "for(;; skip) (if x < 3 then x = x + 1 else break)"
    assert core.oracle(program, spec, "big")["holds"]
    assert core.oracle(program, spec, "wp")["holds"]
    bounded = core.oracle(program, spec, "cont")
    assert bounded["holds"] and bounded["bounded"]
    v = core.refines_big("skip ;; x = x + 1", "x = x + 1", fp(("x",), 4))
    assert v["holds"]
    assert core.refines_small("skip", "break", fp(("x",), 4))["kind"] == "counterexample"


def test_verify_and_check_roundtrip():
    program = (
        "for {inv: [x] <= 3} {incr_inv: [x] <= 3} (;; skip) "
        "(if x < 3 then x = x + 1 else break)"
    )
    spec = "vars x\nmodulus 4\npre: [x] = 0\npost: [x] = 3\n"
    result = core.verify(program, spec)
    assert result["ok"], result
    report = core.check_certificate(result["certificate"])
    assert report["ok"]
    assert "for(;;" in report["triple"]


def test_fuzz_suite():
    report = core.fuzz_suite("semantics", fp(modulus=4), count=40, seed=5, size=8, fuel=150)
    assert report["violations"] == 0
    assert report["performed"] == 40
