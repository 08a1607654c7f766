"""Acceptance suite: one criterion per test, one printed PASS/FAIL line each.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
The shared certificate builders double as the determinism fixtures for
criterion 10 (identical seeds must reproduce identical bytes).
"""

import hashlib
import itertools
import json
import random
import time
from fractions import Fraction

import troprank as tr
from troprank import (
    INF,
    IncidencePattern,
    ProvedInfeasible,
    Realized,
    RealizeBudget,
    TropicalMatrix,
    Unknown,
)
from troprank.reduction import (
    PolySystem,
    compile_system,
    format_poly_system,
    harden,
    parse_poly_system,
    poly_from_terms,
    verify_reduction,
)


def _report(num, name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:>2} {tag} {name} {detail}".rstrip())
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# -- criterion 1 ---------------------------------------------------------------


def test_criterion_01_determinant_oracle():
    rng = random.Random(20240501)
    t0 = time.time()
    for trial in range(1000):
        rows = []
        for _ in range(5):
            row = []
            for _ in range(5):
                if rng.random() < 0.2:
                    row.append(INF)
                else:
                    row.append(Fraction(rng.randint(-20, 20), rng.randint(1, 10)))
            rows.append(row)
        m = TropicalMatrix.from_rows(rows)
        value, winners = tr.brute_force_determinant(m)
        cert = tr.tropical_determinant(m)
        assert cert.value == value, trial
        assert cert.unique == (len(winners) == 1), trial
        if value is INF:
            assert cert.witness is None
        else:
            assert sum(m.entry(i, cert.witness[i]) for i in range(5)) == value
    elapsed = time.time() - t0
    _report(1, "determinant oracle (1000 random 5x5)", elapsed < 10.0, f"{elapsed:.1f}s")


# -- criterion 2 ---------------------------------------------------------------


def _criterion2_certificate():
    lines = []
    for q in (2, 3, 4):
        plane = tr.projective_plane(q)
        for s in range(20):
            seed = 1000 * q + s
            m = tr.incidence_matrix(plane, "random", seed=seed)
            res = tr.tropical_rank(m)
            assert res.rank == 3 and res.certified and res.refuted_level == 4, (q, s)
            lines.append(
                f"q={q} seed={seed} rank={res.rank} refuted={res.refuted_level} "
                f"rows={res.row_witness} cols={res.col_witness} "
                f"matrix={_sha(tr.format_matrix(m))}"
            )
    return "\n".join(lines) + "\n"


def test_criterion_02_weighted_plane_rank():
    t0 = time.time()
    cert = _criterion2_certificate()
    q4_time = time.time() - t0
    plane5 = tr.projective_plane(5)
    m5 = tr.incidence_matrix(plane5, "random", seed=505)
    ok5, counter = tr.sample_level_singular(m5, 4, 1_000_000, seed=505)
    assert ok5, counter
    _report(
        2,
        "weighted plane rank 3, refuted at 4 (q=2,3,4 x20; q=5 sampled)",
        q4_time < 300.0,
        f"{q4_time:.1f}s",
    )


# -- criterion 3 ---------------------------------------------------------------


def test_criterion_03_incidence_counts():
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
        plane = tr.projective_plane(q)
        n = q * q + q + 1
        assert plane.incidence_count() == n * (q + 1), q
    _report(3, "incidence counts (q^2+q+1)(q+1) for all supported q", True)


# -- criterion 4 ---------------------------------------------------------------


def test_criterion_04_fano_separation():
    fano = tr.incidence_matrix(tr.projective_plane(2), "unit")
    pattern = IncidencePattern.from_matrix(fano)
    t0 = time.time()
    vq = tr.realize_rank3(pattern, field=None, seed=4)
    t_q = time.time() - t0
    assert isinstance(vq, ProvedInfeasible) and len(vq.trace) > 0
    vg = tr.realize_rank3(pattern, field=2, seed=4)
    assert isinstance(vg, Realized)
    assert (
        tr.check_realization_exact(
            pattern, vg.configuration.points, vg.configuration.lines, field=2
        )
        is None
    )
    rank = tr.tropical_rank(fano)
    assert rank.rank == 3 and rank.certified
    _report(
        4,
        "Fano: rank 3, GF(2)-realizable, rationally infeasible",
        t_q < 60.0,
        f"infeasibility in {t_q:.2f}s, {len(vq.trace)} closed branches",
    )


# -- criterion 5 ---------------------------------------------------------------


def _criterion5_certificate():
    rng = random.Random(20240505)
    lines = []
    realized = 0
    for trial in range(200):
        r = rng.randint(2, 5)
        c = rng.randint(2, 5)
        pattern = IncidencePattern.from_rows(
            [[int(rng.random() < 0.4) for _ in range(c)] for _ in range(r)]
        )
        verdict = tr.realize_rank3(pattern, field=None, seed=trial)
        if isinstance(verdict, Realized):
            realized += 1
            lift = tr.lift_from_configuration(pattern, verdict.configuration, seed=trial)
            check = tr.verify_lift(pattern.to_tropical(), lift, 3)
            assert check.accepted, (trial, check.reason)
            lines.append(
                f"trial={trial} {r}x{c} realized lift={_sha(tr.format_lift(lift))} "
                f"cfg={_sha(tr.format_configuration(verdict.configuration))}"
            )
        else:
            lines.append(f"trial={trial} {r}x{c} {type(verdict).__name__.lower()}")
    assert realized > 0
    return "\n".join(lines) + "\n", realized


def test_criterion_05_lift_round_trip():
    t0 = time.time()
    cert, realized = _criterion5_certificate()
    _report(
        5,
        "lift round-trip accepts every rational realization",
        True,
        f"{realized}/200 realized, 100% accepted, {time.time() - t0:.1f}s",
    )


# -- criterion 6 ---------------------------------------------------------------


def test_criterion_06_rank_chain_all_3x3():
    t0 = time.time()
    for bits in itertools.product((0, 1), repeat=9):
        m = TropicalMatrix.from_rows(
            [list(bits[0:3]), list(bits[3:6]), list(bits[6:9])]
        )
        trk = tr.tropical_rank(m)
        brk = tr.barvinok_rank(m)
        assert trk.certified and brk.rank is not None
        assert trk.rank <= brk.rank, bits
    elapsed = time.time() - t0
    _report(6, "rank chain over all 512 (0,1) 3x3 matrices", elapsed < 60.0, f"{elapsed:.1f}s")


# -- criterion 7 ---------------------------------------------------------------


def _random_satisfiable_systems(count=50):
    """Seeded corpus: degree-<=2 integer systems with a Boolean-cube solution."""
    rng = random.Random(20240507)
    systems = []
    while len(systems) < count:
        nv = rng.randint(2, 4)
        names = tuple(f"x{i + 1}" for i in range(nv))
        monos = [()] + [((v, 1),) for v in range(nv)] + [
            tuple(sorted(((a, 1), (b, 1)))) if a != b else ((a, 2),)
            for a in range(nv)
            for b in range(a, nv)
        ]
        eqs = []
        for _ in range(rng.randint(1, 4)):
            terms = {}
            for mono in rng.sample(monos, rng.randint(1, 3)):
                terms[mono] = rng.randint(-3, 3)
            eqs.append(poly_from_terms(terms))
        sys_ = PolySystem(names, tuple(eqs))
        sols = []
        for values in itertools.product((0, 1), repeat=nv):
            vals = {i: Fraction(v) for i, v in enumerate(values)}
            if all(eq.evaluate(vals) == 0 for eq in sys_.equations):
                sols.append(dict(zip(names, values)))
        if sols:
            systems.append((sys_, sols))
    return systems


def _criterion7_certificate():
    lines = []
    for idx, (sys_, sols) in enumerate(_random_satisfiable_systems()):
        comp_u = compile_system(sys_, seed=idx)
        hard, info = harden(sys_, seed=idx, stand_in_bits=10)
        comp_h = compile_system(hard, seed=idx)
        for sol in sols:
            vu = verify_reduction(sys_, sol, comp_u)
            assert vu.accepted, (idx, sol, vu.reason)
            lifted = info.lift_assignment(sys_, sol)
            vh = verify_reduction(hard, lifted, comp_h)
            assert vh.accepted, (idx, sol, vh.reason)
        lines.append(
            f"system={idx} vars={len(sys_.variables)} sols={len(sols)} "
            f"sys={_sha(format_poly_system(sys_))} "
            f"unhardened={_sha(tr.format_matrix(comp_u.pattern.to_tropical()))} "
            f"hardened={_sha(tr.format_matrix(comp_h.pattern.to_tropical()))}"
        )
    return "\n".join(lines) + "\n"


def test_criterion_07_reduction_soundness():
    t0 = time.time()
    cert = _criterion7_certificate()
    _report(
        7,
        "reduction accepts every brute-force solution (hardened and not)",
        True,
        f"50 systems, {time.time() - t0:.1f}s",
    )


# -- criterion 8 ---------------------------------------------------------------


def test_criterion_08_reduction_negative_smoke():
    sys_ = parse_poly_system("x1\nx1 - 1\nx1^2 - x1")
    comp = compile_system(sys_, seed=8)
    t0 = time.time()
    verdict = tr.realize_rank3(
        comp.pattern, field="float", seed=8, budget=RealizeBudget(restarts=100)
    )
    assert isinstance(verdict, Unknown)
    for x in range(-2, 3):
        v = verify_reduction(sys_, {"x1": x}, comp)
        assert not v.accepted, x
    _report(
        8,
        "contradictory system: float engine finds nothing, all assignments rejected",
        True,
        f"100 restarts in {time.time() - t0:.1f}s",
    )


# -- criterion 9 ---------------------------------------------------------------


def test_criterion_09_barvinok_identity_family():
    t0 = time.time()
    for n in (2, 3, 4, 5):
        res = tr.barvinok_rank(TropicalMatrix.identity(n))
        assert res.rank == n, n
        assert (
            tr.min_plus_multiply(res.factorization.left, res.factorization.right)
            == TropicalMatrix.identity(n)
        )
    elapsed = time.time() - t0
    _report(9, "min-plus identity matrices have factorization rank n", elapsed < 30.0, f"{elapsed:.1f}s")


# -- criterion 10 --------------------------------------------------------------


def _manifest(criterion, seed_base, certificate):
    doc = {
        "criterion": criterion,
        "seed_base": seed_base,
        "certificate_sha256": hashlib.sha256(certificate.encode()).hexdigest(),
        "version": tr.__version__,
    }
    return json.dumps(doc, sort_keys=True)


def test_criterion_10_determinism():
    runs = []
    for _ in range(2):
        c2 = _criterion2_certificate()
        c5, _ = _criterion5_certificate()
        c7 = _criterion7_certificate()
        runs.append(
            (
                c2,
                c5,
                c7,
                _manifest(2, 1000, c2),
                _manifest(5, 20240505, c5),
                _manifest(7, 20240507, c7),
            )
        )
    ok = runs[0] == runs[1]
    _report(10, "criteria 2, 5, 7 re-run byte-identically", ok)
