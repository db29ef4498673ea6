"""Acceptance gate: nine criteria, each with its stated tolerance and time budget.

Each test prints (and records for the terminal summary) one line
``criterion N: PASS|FAIL <title> (<seconds>s)``.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction


from hahnsat import report
from hahnsat.cli import main
from hahnsat.cuts import Ambient, Case, classify_cut, encode_group_type_as_field_cut, realize_cut
from hahnsat.group import ExpVec, group_value, parse_expvec
from hahnsat.harness import (
    SUITES,
    SuiteConfig,
    dimension_inequality_suite,
    eta0_suite,
    random_expvec,
    random_positive_series,
    random_series,
    run_suite,
)
from hahnsat.pseudo import (
    check_pseudo_cauchy,
    construct_pseudo_limit,
    is_pseudo_limit,
    limit_type_fragment,
    random_pseudo_cauchy,
    valuation_criterion,
)
from hahnsat.series import Precision, Series, f_valuation, residue, s_inverse, s_mul, s_power

import conftest
from instances import fresh_instance, immediate_instance, residue_instance, value_instance

F = Fraction
SEED = 20240601


@contextmanager
def criterion(number: int, title: str, budget: float | None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        limit = f" < {budget:g}s" if budget is not None else ""
        line = f"criterion {number}: {status} {title} ({elapsed:.2f}s{limit})"
        print(line)
        conftest.ACCEPTANCE_LINES.append(line)


def _value(f: Series):
    return f_valuation(f)


# 1 ----------------------------------------------------------------------------

def test_criterion_1_valuation_axioms():
    rng = random.Random(SEED + 1)
    with criterion(1, "valuation axioms on 1000 vector pairs and 500 series pairs", 10):
        for _ in range(1000):
            n = rng.randint(1, 4)
            x, y = random_expvec(rng, n), random_expvec(rng, n)
            if rng.random() < 0.3:
                # y = -x + small: the sum cancels the leading coordinates
                y = -x + ExpVec.unit(n, n, rng.randint(-3, 3))
            m = rng.choice([k for k in range(-10, 11) if k])
            assert group_value(x * m) == group_value(x)
            vx, vy, vs = group_value(x), group_value(y), group_value(x + y)
            assert vs >= min(vx, vy)
            if vx != vy:
                assert vs == min(vx, vy)
        for _ in range(500):
            n = rng.randint(1, 3)
            f, g = random_series(rng, n), random_series(rng, n)
            if rng.random() < 0.3:
                # make the leading terms cancel in f + g
                g = g + f.scale(-1)
                if g.is_exact_zero():
                    continue
            m = rng.choice([k for k in range(-10, 11) if k])
            assert _value(f.scale(m)) == _value(f)
            vf, vg, vs = _value(f), _value(g), _value(f + g)
            assert vs >= min(vf, vg)
            if vf != vg:
                assert vs == min(vf, vg)


# 2 ----------------------------------------------------------------------------

def test_criterion_2_multiplicativity():
    rng = random.Random(SEED + 2)
    with criterion(2, "v(fg) = v(f) + v(g) on 500 exact series pairs", 10):
        for _ in range(500):
            n = rng.randint(1, 3)
            f, g = random_series(rng, n, terms=4), random_series(rng, n, terms=4)
            assert f.exact and g.exact and f.terms and g.terms
            assert _value(s_mul(f, g)) == _value(f) + _value(g)


# 3 ----------------------------------------------------------------------------

def _square_leading(rng, f: Series) -> Series:
    """Rescale so the leading coefficient is a rational square."""
    q = F(rng.randint(1, 5), rng.randint(1, 5))
    return f.scale(f.leading()[1].inverse() * (q * q))


def _agrees_below_trunc(h: Series, target: Series) -> bool:
    d = h - target
    return not d.terms and d.trunc == h.trunc


def test_criterion_3_inverse_and_square_root_roundtrips():
    rng = random.Random(SEED + 3)
    with criterion(3, "f * f^-1 = 1 and (f^(1/2))^2 = f below the declared truncation, 500 series", 30):
        for _ in range(500):
            n = rng.randint(1, 3)
            p = Precision.default(n)
            f = _square_leading(rng, random_positive_series(rng, n, terms=3, height=4))
            one = Series.const(1, n)
            inv = s_inverse(f, p)
            prod = s_mul(f, inv)
            assert _agrees_below_trunc(prod, one), (f, inv, prod)
            assert prod.trunc > ExpVec.zero(n)
            root = s_power(f, F(1, 2), p)
            sq = s_mul(root, root)
            assert _agrees_below_trunc(sq, f), (f, root, sq)
            assert sq.trunc > _value(f)


# 4 ----------------------------------------------------------------------------

def test_criterion_4_pseudo_cauchy_fact():
    rng = random.Random(SEED + 4)
    with criterion(4, "difference fact on 200 pseudo-Cauchy sequences, limits on the full sequence", 20):
        for _ in range(200):
            n = rng.randint(1, 3)
            xs = random_pseudo_cauchy(rng, n, rng.randint(3, 12))
            s = check_pseudo_cauchy(xs)  # full triple check plus consecutive check
            k = len(xs)
            for r in range(k):
                for t in range(r + 1, k):
                    assert _value(xs[t] - xs[r]) == _value(xs[r + 1] - xs[r]) == s.gammas[r]
            a = construct_pseudo_limit(s)
            assert is_pseudo_limit(a, s)
            assert is_pseudo_limit(a, s, exempt_last=False)


# 5 ----------------------------------------------------------------------------

def _separates_all(cp, r: Series) -> bool:
    k = r.dim - cp.sub.dim
    lower = [b for b in cp.sub.elems if b < cp.x0]
    upper = [c for c in cp.sub.elems if cp.x0 < c]
    assert len(lower) + len(upper) == len(cp.sub.elems)
    return all(b.pad(k) < r for b in lower) and all(r < c.pad(k) for c in upper)


def _value_claim(cp, rep) -> None:
    da, w = rep.analysis, rep.witnesses
    d0 = w["d0"]
    # recompute both sides of the claim from the sample, independent of the engine
    below_d0 = d0 < cp.x0
    far = [c for c in cp.sub.elems if (cp.x0 < c if below_d0 else c < cp.x0)]
    near = [b for b in cp.sub.elems if (d0 < b < cp.x0 if below_d0 else cp.x0 < b < d0)]
    d1 = [_value(c - d0) for c in far]
    d2 = [_value(b - d0) for b in near]
    assert all(v < da.gamma for v in d1) and all(da.gamma < v for v in d2)


def _residue_claim(cp, rep) -> None:
    w = rep.witnesses
    d0, a, gamma = w["d0"], w["a"], w["gamma"]
    b0, c0 = w["b0"], w["c0"]
    lo, hi = min(b0, c0), max(b0, c0)
    inside = [e for e in cp.sub.elems if lo <= e <= hi]
    assert all(_value(e - d0) == gamma for e in inside)
    p = cp.precision
    rho = lambda e: residue(s_mul(e - d0, s_inverse(a, p)))
    side_b = [rho(e) for e in inside if e < cp.x0]
    side_c = [rho(e) for e in inside if cp.x0 < e]
    assert not set(side_b) & set(side_c)
    assert all(x < y for x in side_b for y in side_c)


def test_criterion_5_trichotomy_end_to_end():
    expected = []
    with criterion(5, "canonical value, residue and immediate cuts classified and realized", 60):
        for sign in (1, -1):
            cp = value_instance(sign)
            rep = realize_cut(cp)
            assert rep.case is Case.VALUE and classify_cut(cp).case is Case.VALUE
            assert _separates_all(cp, rep.realizer)
            _value_claim(cp, rep)
            expected.append(rep.realizer)

            cp = residue_instance(sign)
            rep = realize_cut(cp)
            assert rep.case is Case.RESIDUE
            assert _separates_all(cp, rep.realizer)
            _residue_claim(cp, rep)
            expected.append(rep.realizer)

        cp = immediate_instance()
        rep = realize_cut(cp)
        assert rep.case is Case.IMMEDIATE
        assert _separates_all(cp, rep.realizer)
        assert all(_value(rep.realizer - cp.x0) > v for _, v in cp.deltas)

        # a cut that no value of the existing group can realize
        cp = fresh_instance()
        ambient = Ambient(2)
        rep = realize_cut(cp, ambient=ambient)
        assert rep.case is Case.VALUE and ambient.n == 3 and rep.witnesses["fresh_coordinate"]
        assert _separates_all(cp, rep.realizer)
        _value_claim(cp, rep)
    assert [str(r) for r in expected] == ["t2^(1/2)", "sqrt2", "-t2^(1/2)", "-sqrt2"]


# 6 ----------------------------------------------------------------------------

def test_criterion_6_dimension_inequality():
    with criterion(6, "rank of sampled values <= k on 50 generator sets at depth 3", 60):
        rep = dimension_inequality_suite(SuiteConfig(seed=SEED, trials=50, depth=3))
        assert rep.passed == 50 and rep.failed == 0 and not rep.counterexamples
        assert all(1 <= r["k"] <= 4 and r["rank"] <= r["k"] for r in rep.records)


# 7 ----------------------------------------------------------------------------

def _random_separated(rng):
    n = rng.randint(1, 3)
    pool = sorted({random_expvec(rng, n, 5) for _ in range(rng.randint(1, 5))})
    cut = rng.randint(0, len(pool))
    return n, pool[:cut], pool[cut:]


def _between(rng, n, lo, hi):
    if lo is None and hi is None:
        return random_expvec(rng, n)
    if lo is None:
        return hi - ExpVec.unit(1, n, rng.randint(1, 3))
    if hi is None:
        return lo + ExpVec.unit(rng.randint(1, n), n, rng.randint(1, 3))
    t = F(rng.randint(1, 9), 10)
    return lo + (hi - lo) * t


def test_criterion_7_reverse_encodings():
    rng = random.Random(SEED + 7)
    with criterion(7, "field-cut encodings on 50 group cuts, fragment vs valuations on 100 pairs", 30):
        for _ in range(50):
            n, H1, H2 = _random_separated(rng)
            reps = [Series.gen(i, n).scale(rng.randint(1, 4)) + Series.monomial(ExpVec.unit(i, n, 2), 1)
                    for i in range(1, n + 1)]
            fc = encode_group_type_as_field_cut(H1, H2, reps, k_max=100)
            lo, hi = (H1[-1] if H1 else None), (H2[0] if H2 else None)
            satisfied = 0
            for _ in range(6):
                g = _between(rng, n, lo, hi)
                x = Series.monomial(g, F(rng.randint(1, 50), rng.randint(1, 5)))
                x = x + Series.monomial(g + ExpVec.unit(1, n), 1)
                assert fc.predicate(x)
                satisfied += 1
                assert fc.strictly_between(fc.extractor(x))
            # elements sitting exactly on a side value never satisfy the predicate
            for h in H1 + H2:
                assert not fc.predicate(Series.monomial(h, F(1, 3)))
            assert satisfied
        for _ in range(100):
            n = rng.randint(1, 2)
            s = check_pseudo_cauchy(random_pseudo_cauchy(rng, n, rng.randint(3, 7)))
            j = rng.randrange(len(s))
            delta = rng.choice(s.gammas) + (ExpVec.unit(rng.randint(1, n), n, rng.randint(0, 2)))
            x = s.elems[j] + Series.monomial(delta, rng.choice([-1, 1]) * rng.randint(1, 6))
            assert limit_type_fragment(s, 100)(x) == valuation_criterion(x, s)


# 8 ----------------------------------------------------------------------------

def _suite_bytes(name: str, cfg: SuiteConfig) -> str:
    rep = run_suite(name, cfg)
    return report.dumps([report.record("suite", report.suite_config(cfg) | {"name": name}, report.suite_result(rep))])


def test_criterion_8_determinism(tmp_path, capsys):
    with criterion(8, "every suite reruns to byte-identical reports", None):
        configs = [(name, SuiteConfig(seed=11, trials=10, depth=2)) for name in SUITES]
        configs += [("eta0", SuiteConfig(seed=11, trials=10, order=o)) for o in ("q", "gamma")]
        for name, cfg in configs:
            assert _suite_bytes(name, cfg) == _suite_bytes(name, cfg)
        files = []
        for i in range(2):
            path = tmp_path / f"dim{i}.jsonl"
            code = main(["suite", "dimension-inequality", "--seed", "5", "--trials", "10", "--depth", "2",
                         "--report", str(path)])
            assert code == 0
            files.append(path.read_bytes())
        capsys.readouterr()
        assert files[0] == files[1]


# 9 ----------------------------------------------------------------------------

def test_criterion_9_honest_negatives():
    with criterion(9, "eta0 over the finite value set reports NoWitness, over lex always a midpoint", None):
        for n in (1, 2, 3, 4):
            gamma = eta0_suite(SuiteConfig(seed=SEED, trials=40, n=n, order="gamma"))
            assert gamma.ok
            if n >= 2:
                assert gamma.counts.get("no_witness", 0) >= 1
            assert any("expected outcome" in note for note in gamma.notes)
            lex = eta0_suite(SuiteConfig(seed=SEED, trials=40, n=n, order="lex"))
            assert lex.ok and lex.counts.get("witness") == 40 and "no_witness" not in lex.counts
            for rec in lex.records:
                if rec["A"] and rec["B"]:
                    a, b = parse_vec(rec["A"][-1]), parse_vec(rec["B"][0])
                    assert parse_vec(rec["witness"]) == (a + b) * F(1, 2)


def parse_vec(text: str) -> ExpVec:
    return parse_expvec(text)
