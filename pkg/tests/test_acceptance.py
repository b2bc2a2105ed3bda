"""Exit criteria.  Each test records one PASS/FAIL line (see conftest)."""

import io
import itertools
import json
import math
import random
import time
from fractions import Fraction

import pytest

from lenseta.cache import ResultCache
from lenseta.cli import TOOL_VERSION, execute, normalize_request, request_key, resolve, run
from lenseta.exactmath import circle_distance, rational_reconstruct
from lenseta.kirby import (
    build_cobordism,
    chain_link,
    characteristic_sublinks,
    first_component_rule,
    h1_order,
    handle_slide,
    is_characteristic,
    slam_dunk_expand,
    spin_extension,
)
from lenseta.lens import LensSpace, xi_closed_form, xi_defect_sum
from lenseta.seifert import (
    RepType,
    bprime,
    e_real,
    e_real_via_bprime,
    e_real_via_cobordism,
    quadratic_residue,
    seifert_data,
)
from lenseta.verify import lens_grid, pairwise_coprime_tuples, random_slide_case, random_type

from test_cli import random_request, write_lines

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def lens_sweep():
    start = time.perf_counter()
    rows = []
    for p, q, s in lens_grid(60):
        z = xi_defect_sum(LensSpace.standard(p, q), s)
        rows.append((p, q, s, z, xi_closed_form(p, q, s)))
    return rows, time.perf_counter() - start


@pytest.fixture(scope="module")
def seifert_sweep():
    start = time.perf_counter()
    rng = random.Random(2024)
    cases = []
    for a_vec in pairwise_coprime_tuples(13, sizes=(2, 3, 4)):
        data = seifert_data(a_vec)
        for N in (2, 3):
            for _ in range(50):
                cases.append((data, random_type(data, N, rng)))
    return cases, rng, time.perf_counter() - start


def test_c1_lens_agreement(lens_sweep, criterion):
    rows, elapsed = lens_sweep
    bad = None
    for p, q, s, z, exact in rows:
        close = circle_distance(z.real, float(exact)) < 1e-8
        try:
            snapped = rational_reconstruct(z.real, 2 * p, 1e-8) == exact.value
        except ValueError:
            snapped = False
        if not (close and snapped):
            bad = (p, q, s)
            break
    criterion("C1 lens agreement sweep p<=60 (tol 1e-8, reconstruction at 2p)",
              bad is None and elapsed < 30, f"{len(rows)} cases, {elapsed:.1f}s, first failure {bad}")


def test_c2_imaginary_part(lens_sweep, criterion):
    rows, _ = lens_sweep
    worst = max(abs(z.imag) for *_, z, _e in rows)
    criterion("C2 |Im defect sum| < 1e-9", worst < 1e-9, f"max |Im| = {worst:.2e}")


def test_c3_seifert_triple(seifert_sweep, criterion):
    cases, _, _ = seifert_sweep
    start = time.perf_counter()
    bad = next(
        ((d.a_vec, r) for d, r in cases if not (e_real(d, r) == e_real_via_bprime(d, r) == e_real_via_cobordism(d, r))),
        None,
    )
    elapsed = time.perf_counter() - start
    criterion("C3 e_real = via_bprime = via_cobordism exactly",
              bad is None and elapsed < 60, f"{len(cases)} types, {elapsed:.1f}s, first failure {bad}")


def test_c4_worked_value(criterion):
    data = seifert_data((2, 3, 5))
    rep = RepType(2, 1, ((0, 1), (0, 1), (0, 1)))
    values = [f(data, rep).value for f in (e_real, e_real_via_bprime, e_real_via_cobordism)]
    # hand value: per-lens contributions 1/2 + 1/3 + 1/5
    expected = (Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 5)) % 1
    criterion("C4 Sigma(2,3,5), N=2, r_h=1 gives 1/30", values == [expected] * 3 == [Fraction(1, 30)] * 3,
              f"got {values}")


def test_c5_bprime_congruence(seifert_sweep, criterion):
    cases, _, _ = seifert_sweep
    bad = None
    for data in {d for d, _ in cases}:
        for a_i, b_i in zip(data.a_vec, data.b_vec):
            if (a_i * bprime(a_i, b_i) - data.a) % (a_i * a_i):
                bad = (data.a_vec, a_i)
    criterion("C5 a_i b'_i = a mod a_i^2", bad is None, f"first failure {bad}")


def test_c6_kirby_lemmas(criterion):
    start = time.perf_counter()
    failures = {"det": None, "count": None, "rule": None, "shift": None}
    n = 0
    for p in range(2, 301):
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            n += 1
            coeffs = slam_dunk_expand(p, q)
            chain = chain_link(coeffs)
            if h1_order(chain) != p:
                failures["det"] = failures["det"] or (p, q)
            if len(characteristic_sublinks(chain)) != (2 if p % 2 == 0 else 1):
                failures["count"] = failures["count"] or (p, q)
            if not first_component_rule(p, q).agree:
                failures["rule"] = failures["rule"] or (p, q)
            if slam_dunk_expand(p, p + q) != [1, coeffs[0] + 1] + coeffs[1:]:
                failures["shift"] = failures["shift"] or (p, q)
    elapsed = time.perf_counter() - start
    ok = all(v is None for v in failures.values()) and elapsed < 20
    criterion("C6 Kirby lemma suite 0<q<p<=300", ok, f"{n} pairs, {elapsed:.1f}s, failures {failures}")


def test_c7_spin_extension_law(criterion):
    bad = [a for a in pairwise_coprime_tuples(13, sizes=(2, 3, 4))
           if spin_extension(build_cobordism(seifert_data(a))).exists != (math.prod(a) % 2 == 0)]
    criterion("C7 spin extension exists iff prod a_i even", not bad, f"counterexamples {bad[:3]}")


def test_c8_handle_slides(criterion):
    rng = random.Random(88)
    done, bad = 0, None
    while done < 200:
        link, coloring = random_slide_case(rng)
        if link.m < 2:
            continue
        i, j = rng.sample(range(link.m), 2)
        sign = rng.choice((1, -1))
        new, col = handle_slide(link, coloring, i, j, sign)
        ok = (h1_order(new) == h1_order(link)
              and len(characteristic_sublinks(new)) == len(characteristic_sublinks(link))
              and is_characteristic(new, col))
        if not ok and bad is None:
            bad = (link.framings, coloring, i, j, sign)
        done += 1
    criterion("C8 200 random handle slides", bad is None, f"first failure {bad}")


def test_c9_invariances(lens_sweep, seifert_sweep, criterion):
    rows, _ = lens_sweep
    lens_bad = next(((p, q, s) for p, q, s, _, exact in rows
                     if xi_closed_form(p, q, s + p) != exact or xi_closed_form(p, q, -s) != exact), None)
    cases, rng, _ = seifert_sweep
    seif_bad = None
    for data, rep in cases:
        e = e_real(data, rep)
        i = rng.randrange(data.n)
        c = rng.randrange(data.a_vec[i])
        rows_shift = list(rep.s)
        rows_shift[i] = tuple((x + c) % data.a_vec[i] for x in rows_shift[i])
        rows_perm = list(rep.s)
        rows_perm[i] = tuple(rng.sample(rep.s[i], len(rep.s[i])))
        if quadratic_residue(data, rows_shift) != e or e_real(data, RepType(rep.N, rep.r_h, tuple(rows_perm))) != e:
            seif_bad = (data.a_vec, rep, i, c)
            break
    criterion("C9 periodicity/evenness and column-shift/permutation invariance",
              lens_bad is None and seif_bad is None, f"lens {lens_bad}, seifert {seif_bad}")


def test_c10_cli(tmp_path, criterion):
    rng = random.Random(1010)
    cache = ResultCache(tmp_path / "cache")
    requests = [normalize_request(**random_request(rng)) for _ in range(100)]
    for req in requests:
        resolve(req, cache)
    fresh_cache = ResultCache(tmp_path / "cache")
    cache_ok = all(fresh_cache.get(request_key(r), TOOL_VERSION) == execute(r) for r in requests)

    raw = [random_request(rng) for _ in range(30)]
    path = write_lines(tmp_path / "batch.jsonl", [json.dumps(r) for r in raw])
    out, code = run(["batch", path, "--no-cache"])
    lines = out.splitlines()[:-1]
    order_ok = code == 0 and len(lines) == len(raw) and all(
        json.loads(line)["result"]["request"] == normalize_request(r["kind"], r["params"]) for r, line in zip(raw, lines)
    )

    codes = []
    for argv in (["lens-xi", "--p", "5", "--q", "3", "--s", "1", "--method", "both", "--format", "json"],
                 ["seifert-solve", "--a", "2,3,5"],
                 ["lens-xi", "--p", "4", "--q", "2", "--s", "1"],
                 ["verify", "--suite", "unknown"]):
        codes.append(run(argv + ["--no-cache"], stderr=io.StringIO())[1])
    codes_ok = codes == [0, 0, 3, 2]
    criterion("C10 CLI cache coherence, batch order, exit codes", cache_ok and order_ok and codes_ok,
              f"cache={cache_ok} order={order_ok} codes={codes}")
