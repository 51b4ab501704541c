"""Self-verification: formula values against independent oracles.

Each check returns a CheckResult; a run is deterministic for a given level and
seed, so its rendered output is byte-identical across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import discrepancy, families, oracle
from .bounds import sandwich, tau1, tau2, ulb_pipeline, uub2, uub_pipeline
from .errors import ConsistencyError, DistributionValidationError
from .levenshtein import quadrature_system, s_interval, verify_quadrature
from .polyops import Polynomial, gegenbauer_expand
from .tables import REFERENCE_RANGE, compare_rows, table_rows

LEVELS = ("quick", "full")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    failures: tuple[str, ...] = field(default_factory=tuple)


def _result(name: str, cases: int, failures: list[str]) -> CheckResult:
    return CheckResult(name, not failures, cases, tuple(failures))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def sample_separations(n: int, m: int, count: int = 5) -> list[float]:
    """``count`` equally spaced interior points of the degree-m separation interval."""
    lo, hi = s_interval(n, m)
    return [lo + (hi - lo) * (j + 1) / (count + 1) for j in range(count)]


def check_quadrature(seed: int, dims=range(3, 21), polys: int = 100, tol: float = 1e-10) -> CheckResult:
    """f_0 = f(1)/N1 + sum rho_i f(alpha_i) for random polynomials of degree <= m."""
    rng = np.random.default_rng(seed)
    failures, cases = [], 0
    for n in dims:
        for m in (1, 2, 3):
            # f_0 is linear in the coefficients: precompute it for each monomial
            const = np.array([gegenbauer_expand(Polynomial([0.0] * j + [1.0]), n)[0] for j in range(m + 1)])
            coeffs = rng.standard_normal((polys, m + 1))
            for s in sample_separations(n, m):
                sys = quadrature_system(n, s, m)
                powers = lambda x: x ** np.arange(m + 1)
                rhs = coeffs @ powers(1.0) * sys.inv_N1
                for w, a in zip(sys.weights, sys.nodes):
                    rhs = rhs + w * (coeffs @ powers(a))
                resid = np.abs(coeffs @ const - rhs)
                cases += polys
                if resid.max() >= tol:
                    failures.append(f"n={n} m={m} s={s!r}: residual {resid.max():.3e}")
                # one scalar pass through the public API as well
                if verify_quadrature(sys, Polynomial(coeffs[0])) >= tol:
                    failures.append(f"n={n} m={m} s={s!r}: verify_quadrature disagrees")
    return _result("quadrature", cases, failures)


def check_attainment(dims=range(2, 51), tol: float = 1e-12) -> CheckResult:
    """Simplex and cross-polytope sums equal the degree-1 and degree-2 bounds."""
    failures = []
    for n in dims:
        simplex = oracle.simplex_points(n).sum_of_distances()
        if _rel(simplex, tau1(n, n + 1)) > tol:
            failures.append(f"simplex n={n}: {simplex!r} vs {tau1(n, n + 1)!r}")
        cross = oracle.biorthogonal_points(n).sum_of_distances()
        if _rel(cross, tau2(n, 2 * n)) > tol:
            failures.append(f"biorthogonal n={n}: {cross!r} vs {tau2(n, 2 * n)!r}")
    return _result("attainment", 2 * len(dims), failures)


def coincidence_cases(nmax: int = 30) -> list[tuple[int, int, float]]:
    cases = [(n, n + 1, -1.0 / n) for n in range(2, nmax + 1)]
    cases += [(n, 2 * n, 0.0) for n in range(2, nmax + 1)]
    return cases + [(5, 16, 0.2)]


def check_coincidence(nmax: int = 30, tol: float = 1e-9) -> CheckResult:
    """Lower and upper bounds on tau meet on universally optimal codes."""
    failures = []
    cases = coincidence_cases(nmax)
    for n, N, s in cases:
        lo, hi = uub_pipeline(n, N, s), ulb_pipeline(n, N)
        if _rel(lo, hi) > tol:
            failures.append(f"(n={n}, N={N}, s={s!r}): uub {lo!r} vs ulb {hi!r}")
    return _result("coincidence", len(cases), failures)


def check_printed_ub2(nmax: int = 30) -> CheckResult:
    """Diagnostic: the typeset degree-2 form must miss the coincidence.

    At (n, n+1, -1/n) it is compared with the upper bound on tau, and at
    (n, 2n, 0) with the cross-polytope sum 4n + 4 sqrt(2) n (n-1). Passing means
    the defect is reproduced and the corrected form closes it.
    """
    failures = []
    for n in range(3, nmax + 1):
        for N, s, target in (
            (n + 1, -1.0 / n, ulb_pipeline(n, n + 1)),
            (2 * n, 0.0, 4 * n + 4 * math.sqrt(2.0) * n * (n - 1)),
        ):
            if _rel(uub2(n, N, s), target) > 1e-9:
                failures.append(f"n={n}, N={N}: corrected degree-2 form misses {target!r}")
            if _rel(uub2(n, N, s, printed=True), target) < 1e-6:
                failures.append(f"n={n}, N={N}: typeset degree-2 form unexpectedly matches")
    return _result("printed_ub2", 2 * (nmax - 2), failures)


def stolarsky_configurations() -> dict[str, oracle.PointSet]:
    petersen = oracle.srg_points(families.SrgParameters(10, 3, 0, 1), oracle.petersen_adjacency())
    return {
        "simplex3": oracle.simplex_points(3),
        "simplex4": oracle.simplex_points(4),
        "octahedron": oracle.biorthogonal_points(3),
        "petersen": petersen,
    }


def check_stolarsky(seed: int, names=None, samples: int = 10**6, sigmas: float = 3.0) -> CheckResult:
    """Monte Carlo cap discrepancy against (W - tau/N^2)/c_n."""
    configs = stolarsky_configurations()
    names = list(configs) if names is None else list(names)
    failures = []
    for i, name in enumerate(names):
        ps = configs[name]
        exact = discrepancy.spherical_discrepancy(ps.sum_of_distances(), ps.n, ps.N)
        est, se = oracle.monte_carlo_cap_discrepancy(ps, samples=samples, seed=seed + i)
        if abs(est - exact) > sigmas * se:
            failures.append(f"{name}: estimate {est:.6g} +- {se:.2g}, formula {exact:.6g}")
    return _result("stolarsky", len(names), failures)


def random_codes(seed: int, count: int = 50, nmax: int = 12, Nmax: int = 32) -> list[list[list[int]]]:
    """Seeded random binary codes with distinct codewords."""
    rng = np.random.default_rng(seed)
    codes = []
    for _ in range(count):
        n = int(rng.integers(2, nmax + 1))
        N = int(rng.integers(1, min(Nmax, 2**n) + 1))
        words = rng.choice(2**n, size=N, replace=False)
        codes.append([[(int(w) >> b) & 1 for b in range(n)] for w in words])
    return codes


def check_binary_identity(seed: int, count: int = 50, nmax: int = 12, Nmax: int = 32) -> CheckResult:
    """Exhaustive D_b equals the lambda-formula value exactly."""
    failures = []
    for i, code in enumerate(random_codes(seed, count, nmax, Nmax)):
        brute = oracle.brute_binary_discrepancy(code)
        formula = discrepancy.binary_discrepancy_exact(families.distribution_from_codewords(code))
        if brute != formula:
            failures.append(f"code {i} (n={len(code[0])}, N={len(code)}): brute {brute} vs formula {formula}")
    return _result("binary_identity", count, failures)


def srg_presets(mmax: int = 4, qs=(2, 3, 4)) -> list[tuple[str, int, int, families.SrgParameters]]:
    out = []
    for m in range(2, mmax + 1):
        for q in qs:
            out.append(("quadric", m, q, families.quadric_srg(m, q)))
            out.append(("hyperbolic", m, q, families.hyperbolic_srg(m, q)))
    return out


def check_frame_potential(tol: float = 1e-9) -> CheckResult:
    """SRG embeddings are tight frames and match the closed-form distance sum."""
    failures, cases = [], 0
    for kind, m, q, p in srg_presets():
        for eig in ("first", "second"):
            spec = families.srg_embedding(p, eig)
            cases += 1
            fp, target = spec.frame_potential(), spec.N**2 / spec.n
            if _rel(fp, target) > tol:
                failures.append(f"{kind}(m={m}, q={q}) {eig}: frame potential {fp!r} vs {target!r}")
            tau, closed = families.sum_of_distances(spec), families.srg_sum_formula(p, eig)
            if _rel(tau, closed) > tol:
                failures.append(f"{kind}(m={m}, q={q}) {eig}: tau {tau!r} vs closed form {closed!r}")
    return _result("frame_potential", cases, failures)


def check_tables() -> CheckResult:
    failures, cases = [], 0
    for table, (lo, hi) in REFERENCE_RANGE.items():
        for cell in compare_rows(table_rows(table, lo, hi)):
            cases += 1
            if not cell.passed:
                failures.append(f"{table} r={cell.r} {cell.column}: {cell.value!r} vs {cell.reference!r}")
    return _result("tables", cases, failures)


def check_dual_bch(rs=(4, 6)) -> CheckResult:
    """Even-r dual BCH: enumeration is a valid distribution inside the sandwich; typeset values are not."""
    failures = []
    for r in rs:
        d = families.dual_bch_enumerated(r)
        if sum(int(a) for a in d.counts) != 2 ** (2 * r):
            failures.append(f"r={r}: enumerated counts do not sum to 2^(2r)")
        spec = families.spherical_embedding(d)
        tau = families.sum_of_distances(spec)
        if not sandwich(d.n, d.N, spec.s).holds(tau):
            failures.append(f"r={r}: tau {tau!r} outside its bounds")
        try:
            families.dual_bch_printed(r)
            failures.append(f"r={r}: typeset distribution passed validation")
        except DistributionValidationError:
            pass
    return _result("dual_bch_even", len(rs), failures)


def plan(level: str, seed: int) -> list[tuple[str, Callable[[], CheckResult]]]:
    if level == "quick":
        return [
            ("quadrature", lambda: check_quadrature(seed, dims=range(3, 11), polys=10)),
            ("attainment", check_attainment),
            ("coincidence", check_coincidence),
            ("printed_ub2", check_printed_ub2),
            ("stolarsky", lambda: check_stolarsky(seed, ["octahedron", "simplex3"], samples=2 * 10**5)),
            ("binary_identity", lambda: check_binary_identity(seed, count=10, nmax=8, Nmax=16)),
            ("frame_potential", check_frame_potential),
            ("tables", check_tables),
            ("dual_bch_even", lambda: check_dual_bch((4,))),
        ]
    if level == "full":
        return [
            ("quadrature", lambda: check_quadrature(seed)),
            ("attainment", check_attainment),
            ("coincidence", check_coincidence),
            ("printed_ub2", check_printed_ub2),
            ("stolarsky", lambda: check_stolarsky(seed)),
            ("binary_identity", lambda: check_binary_identity(seed)),
            ("frame_potential", check_frame_potential),
            ("tables", check_tables),
            ("dual_bch_even", check_dual_bch),
        ]
    raise ValueError(f"level must be one of {LEVELS}, got {level!r}")


def run_checks(level: str = "quick", seed: int = oracle.DEFAULT_SEED) -> list[CheckResult]:
    """Run every check of a level. A check that raises is recorded as failed."""
    results = []
    for name, fn in plan(level, seed):
        try:
            results.append(fn())
        except (ArithmeticError, ValueError, ConsistencyError) as exc:
            results.append(CheckResult(name, False, 0, (f"{type(exc).__name__}: {exc}",)))
    return results
