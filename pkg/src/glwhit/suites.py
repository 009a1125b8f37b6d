"""Exhaustive verification suites and the built-in reference examples.

Each sweep_* function exhausts a family of inputs up to a size bound and
returns a summary dict with a top-level "ok" flag plus enough counters to
print a one-line table row.  verify_reference_examples re-runs the worked
gl_4 deformation examples and the (3,1)/(2,2) incomparability check with
their frozen expected outputs.  Everything here is pure and deterministic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exactlin import QMatrix, Subspace, jordan_type, rank, rat_str
from .gln import LieElement, jordan_matrix, neutral_h
from .grading import deligne_filtration, heisenberg_data, weight_filtration
from .partitions import Partition, compositions_of, dominance_leq, partitions_of
from .whittaker import WhittakerPair, build_chain, levi_relation
from .glmain import construct
from .principal import plroot_system, principal_dominator
from .mirabolic import final_stage_shape, hom_split_check, verify_suite


def _span(n, elements):
    return Subspace(n * n, [x.to_vector() for x in elements])


def _block_scalar(parts, vals) -> LieElement:
    """diag(vals[0] Id_{parts[0]}, vals[1] Id_{parts[1]}, ...)."""
    out = []
    for p, v in zip(parts, vals):
        out.extend([Fraction(v)] * p)
    return LieElement.diagonal(out)


def _central_reps(length, values):
    """Tuples over the value grid, deduplicated up to a constant shift
    (each class represented by its min-zero member)."""
    seen = set()
    for vals in itertools.product(values, repeat=length):
        m = min(vals)
        key = tuple(v - m for v in vals)
        if key not in seen:
            seen.add(key)
            yield key


# ---------------------------------------------------------------------------
# reference examples (frozen expected outputs)
# ---------------------------------------------------------------------------

def glsame_chain():
    """The gl_4 deformation with S~ = S + diag(2,2,-2,-2) and phi~ = phi."""
    h = LieElement.diagonal([1, -1, 1, -1])
    f = LieElement.elementary(4, 2, 1) + LieElement.elementary(4, 4, 3)
    z = LieElement.diagonal([2, 2, -2, -2])
    return build_chain(WhittakerPair(h, f), WhittakerPair(h + z, f))


def glsmall_chain():
    """The gl_4 deformation onto S~ = diag(0,-2,2,0) with a nontrivial
    perturbation phi' = E13 + E24."""
    h = LieElement.diagonal([1, -1, 1, -1])
    f = LieElement.elementary(4, 2, 1) + LieElement.elementary(4, 4, 3)
    s_tilde = LieElement.diagonal([0, -2, 2, 0])
    f_tilde = (LieElement.elementary(4, 1, 3) + LieElement.elementary(4, 2, 1)
               + LieElement.elementary(4, 2, 4) + LieElement.elementary(4, 4, 3))
    f_prime = LieElement.elementary(4, 1, 3) + LieElement.elementary(4, 2, 4)
    return build_chain(WhittakerPair(h, f), WhittakerPair(s_tilde, f_tilde),
                       f_prime)


def orbit_incomparability():
    """dominance (2,2) <= (3,1) holds, yet inside the degree -2 slice of
    S~ = diag(3,1,-1,-3) the two orbits are incomparable."""
    s_tilde = LieElement.diagonal([3, 1, -1, -3])
    x = LieElement.elementary(4, 2, 1) + LieElement.elementary(4, 4, 3)
    y = LieElement.elementary(4, 2, 1) + LieElement.elementary(4, 3, 2)
    report = {
        "x_type": list(jordan_type(x.matrix).parts),
        "y_type": list(jordan_type(y.matrix).parts),
        "dominance": dominance_leq(Partition([2, 2]), Partition([3, 1])),
        "levi_relation": levi_relation(s_tilde, x, y),
    }
    report["ok"] = (report["x_type"] == [2, 2] and report["y_type"] == [3, 1]
                    and report["dominance"] is True
                    and report["levi_relation"] == "incomparable")
    return report


def verify_reference_examples() -> dict:
    e = LieElement.elementary
    report = {}

    chain = glsame_chain()
    st_q = chain.stages[1]    # t = 1/4
    st_3q = chain.stages[2]   # t = 3/4
    same = {
        "critical": [rat_str(t) for t in chain.critical_ts],
        "critical_ok": [rat_str(t) for t in chain.critical_ts] == ["1/4", "3/4"],
        "l_quarter": st_q.l == (st_q.v
                                + _span(4, [e(4, 3, 2)])
                                + _span(4, [e(4, 1, 3) + e(4, 2, 4)])),
        "r_quarter": st_q.r == (st_q.v + _span(4, [e(4, 1, 3), e(4, 2, 4)])),
        "l_eq_r_at_3_4": st_3q.l == st_3q.r,
        "certificates": chain.all_certificates_pass,
    }
    same["ok"] = all(v for k, v in same.items() if isinstance(v, bool))
    report["glsame"] = same

    chain = glsmall_chain()
    lp_expected = _span(4, [e(4, 1, 2), e(4, 1, 4), e(4, 3, 2), e(4, 3, 4)])
    st_half = chain.stages[1]  # t = 1/2
    rel = e(4, 3, 1) - e(4, 4, 2)
    small = {
        "critical": [rat_str(t) for t in chain.critical_ts],
        "critical_ok": [rat_str(t) for t in chain.critical_ts] == ["1/2"],
        "l_prime_0": chain.stages[0].l_prime == lp_expected,
        "l_prime_half": st_half.l_prime == lp_expected,
        "r_prime_half": (st_half.r_prime.contains(rel.to_vector())
                         and all(st_half.r_prime.contains(x.to_vector())
                                 for x in (e(4, 1, 2), e(4, 3, 2), e(4, 3, 4)))),
        "certificates": chain.all_certificates_pass,
    }
    small["ok"] = all(v for k, v in small.items() if isinstance(v, bool))
    report["glsmall"] = small

    report["orbit_incomparability"] = orbit_incomparability()
    report["all"] = all(report[k]["ok"] for k in
                        ("glsame", "glsmall", "orbit_incomparability"))
    return report


# ---------------------------------------------------------------------------
# exhaustive sweeps
# ---------------------------------------------------------------------------

def sweep_orbit_order(n_max=7) -> dict:
    """dominance_leq(mu, lam) <=> rank(J_mu^k) <= rank(J_lam^k) for all k,
    over every ordered partition pair of every n <= n_max."""
    pairs = 0
    mismatches = []
    for n in range(1, n_max + 1):
        parts = list(partitions_of(n))
        ranks = {}
        for lam in parts:
            m = jordan_matrix(lam).matrix
            ranks[lam] = tuple(rank(m.power(k)) for k in range(1, n + 1))
        for mu in parts:
            for lam in parts:
                pairs += 1
                dom = dominance_leq(mu, lam)
                rk = all(a <= b for a, b in zip(ranks[mu], ranks[lam]))
                if dom != rk:
                    mismatches.append((list(mu.parts), list(lam.parts)))
    return {"n_max": n_max, "pairs": pairs, "mismatches": mismatches,
            "ok": not mismatches}


def sweep_glmain(n_max=6) -> dict:
    """construct(lam, mu) for every dominated ordered pair of n <= n_max;
    every witness must pass its full check bundle."""
    pairs = 0
    failures = []
    for n in range(1, n_max + 1):
        parts = list(partitions_of(n))
        for lam in parts:
            for mu in parts:
                if not dominance_leq(mu, lam):
                    continue
                pairs += 1
                wit = construct(lam, mu)
                if not wit.all_checks_pass:
                    failures.append((list(lam.parts), list(mu.parts)))
    return {"n_max": n_max, "pairs": pairs, "failures": failures,
            "ok": not failures}


def sweep_deligne(n_max=6) -> dict:
    """deligne_filtration(e, k) equals the h-weight filtration for the upper
    Jordan matrix of every partition of n <= n_max and every k in [-2n, 2n]."""
    cases = 0
    failures = []
    for n in range(1, n_max + 1):
        for eta in list(partitions_of(n)):
            e = LieElement(jordan_matrix(eta).matrix.transpose())
            h = neutral_h(eta)
            for k in range(-2 * n, 2 * n + 1):
                cases += 1
                if deligne_filtration(e, k) != weight_filtration(h, k):
                    failures.append((list(eta.parts), k))
    return {"n_max": n_max, "cases": cases, "failures": failures,
            "ok": not failures}


def sweep_heisenberg(n_max=6) -> dict:
    """Heisenberg quotient checks for every nonzero nilpotent type, n <= n_max:
    I ideal in u, dim v/I = 1, e not in I, omega nondegenerate on u/v."""
    cases = 0
    failures = []
    for n in range(1, n_max + 1):
        for eta in list(partitions_of(n)):
            if eta.parts[0] < 2:
                continue  # zero nilpotent
            cases += 1
            data = heisenberg_data(jordan_matrix(eta))
            if not data.all_checks_pass():
                failures.append(list(eta.parts))
    return {"n_max": n_max, "cases": cases, "failures": failures,
            "ok": not failures}


def sweep_chain(n_max=5) -> dict:
    """Deformation chains from (h, J_lam) to (h + Z, J_lam) for every
    partition of n <= n_max and every block-scalar Z on the integer grid
    {-2..2}^(number of blocks), deduplicated up to central shift."""
    cases = 0
    failures = []
    for n in range(1, n_max + 1):
        for lam in list(partitions_of(n)):
            h = neutral_h(lam)
            f = jordan_matrix(lam)
            pair = WhittakerPair(h, f)
            for vals in _central_reps(len(lam.parts), range(-2, 3)):
                cases += 1
                z = _block_scalar(lam.parts, vals)
                chain = build_chain(pair, WhittakerPair(h + z, f))
                if not chain.all_certificates_pass:
                    failures.append((list(lam.parts), list(vals)))
    return {"n_max": n_max, "cases": cases, "failures": failures,
            "ok": not failures}


def sweep_principal(n_max=5) -> dict:
    """Regularized simple systems for every Jordan type of n <= n_max and
    block-scalar Z on {-2, 0, 2}^(number of blocks) up to central shift:
    full (a)-(d) report plus the principal-dominator certificate."""
    cases = 0
    failures = []
    for n in range(1, n_max + 1):
        for lam in list(partitions_of(n)):
            h = neutral_h(lam)
            f = jordan_matrix(lam)
            for vals in _central_reps(len(lam.parts), (-2, 0, 2)):
                cases += 1
                s = h + _block_scalar(lam.parts, vals)
                pair = WhittakerPair(s, f)
                rs = plroot_system(pair)
                ok = rs.all_pass
                if ok:
                    principal_dominator(pair)  # asserts its own certificate
                else:
                    failures.append((list(lam.parts), list(vals)))
    return {"n_max": n_max, "cases": cases, "failures": failures,
            "ok": not failures}


def sweep_mirabolic(n_max=5) -> dict:
    """Stage suites for every composition of 2..n_max with length >= 2; the
    final-stage shape split and the Hom splitting are checked everywhere,
    while the per-stage suite is expected to pass exactly when the last part
    is maximal (see the module docstring)."""
    passed = []
    failed = []
    shape_failures = []
    hom_failures = []
    for n in range(2, n_max + 1):
        for eta in list(compositions_of(n)):
            if len(eta.parts) < 2:
                continue
            report = verify_suite(eta)
            (passed if report["all"] else failed).append(list(eta.parts))
            try:
                final_stage_shape(eta)
            except AssertionError:
                shape_failures.append(list(eta.parts))
            if not hom_split_check(eta)["all"]:
                hom_failures.append(list(eta.parts))
    maximal = [p for p in passed + failed
               if p[-1] == max(p)]
    maximal_ok = all(p not in failed for p in maximal)
    return {"n_max": n_max, "cases": len(passed) + len(failed),
            "passed": passed, "failed": failed,
            "maximal_last_part_all_pass": maximal_ok,
            "shape_failures": shape_failures, "hom_failures": hom_failures,
            "ok": maximal_ok and not shape_failures and not hom_failures}
