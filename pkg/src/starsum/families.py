"""Builders and exact verifiers for the harmonic-sum identity families.

Each family ties a weak-descent sum H*_n over a patterned composition to a
signed comma-or-merge expansion of a short base index, evaluated through one
of the two damped companion sums.  This module constructs both sides from a
parameter tuple, verifies instances and whole parameter sweeps as exact
rationals, and also hosts the binomial-kernel identities and small closed
forms used as independent cross-checks.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Iterator, List, NamedTuple, Optional, Tuple

from .exact_eval import (
    BinomialCache,
    mhs,
    mhs_star,
    mollified_big,
    mollified_small,
    pi_companion_sum,
    rat_str,
    rational,
)
from .index_core import EMPTY, SignedIndex, as_index, pi_expand_weighted

TWO_ONE = "TWO_ONE"
TWO_ONE_TWO = "TWO_ONE_TWO"
C21 = "C21"
ONE_C21 = "ONE_C21"
C212 = "C212"
ONE_C212 = "ONE_C212"
TWO_ONE_C2 = "TWO_ONE_C2"
C2_TWO_ONE_C2 = "C2_TWO_ONE_C2"
ONES_C = "ONES_C"

FAMILIES = (
    TWO_ONE,
    TWO_ONE_TWO,
    C21,
    ONE_C21,
    C212,
    ONE_C212,
    TWO_ONE_C2,
    C2_TWO_ONE_C2,
    ONES_C,
)

BIG = "big"
SMALL = "small"


class RhsForm(NamedTuple):
    """Right-hand side shape: sign * sum over images p of base of
    coeff_base^depth(p) * companion_n(p)."""

    base: SignedIndex
    coeff_base: int
    sign: int
    companion: str


def _int_tuple(name: str, value) -> Tuple[int, ...]:
    if value is None:
        return ()
    if isinstance(value, int):
        value = (value,)
    out = tuple(int(v) for v in value)
    if any(not isinstance(v, int) for v in out):
        raise ValueError("%s entries must be integers" % name)
    return out


@dataclass(frozen=True)
class FamilySpec:
    """Parameter tuple selecting one instance of one identity family.

    Which fields are meaningful depends on the family; unused fields must be
    left at their defaults.  r may be omitted, in which case it is inferred
    from the list lengths.
    """

    family: str
    a: Tuple[int, ...] = ()
    b: Tuple[int, ...] = ()
    c: Tuple[int, ...] = ()
    t: int = 0
    r: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "a", _int_tuple("a", self.a))
        object.__setattr__(self, "b", _int_tuple("b", self.b))
        object.__setattr__(self, "c", _int_tuple("c", self.c))
        object.__setattr__(self, "t", int(self.t))
        if self.r is None:
            object.__setattr__(self, "r", self._inferred_r())
        _validate(self)

    def _inferred_r(self) -> int:
        f = self.family
        if f == TWO_ONE:
            return len(self.a)
        if f == TWO_ONE_TWO:
            return len(self.a) - 1
        if f == C2_TWO_ONE_C2:
            return len(self.c) - 1
        return len(self.c)

    def params(self) -> dict:
        return {
            "family": self.family,
            "a": list(self.a),
            "b": list(self.b),
            "c": list(self.c),
            "t": self.t,
            "r": self.r,
        }


def _fail(spec: FamilySpec, message: str) -> None:
    raise ValueError("%s spec invalid: %s" % (spec.family, message))


def _require_unused(spec: FamilySpec, b: bool = False, c: bool = False,
                    t: bool = False) -> None:
    if b and spec.b:
        _fail(spec, "parameter b is not used by this family")
    if c and spec.c:
        _fail(spec, "parameter c is not used by this family")
    if t and spec.t != 0:
        _fail(spec, "parameter t is not used by this family")


def _validate(spec: FamilySpec) -> None:
    f = spec.family
    if f not in FAMILIES:
        raise ValueError("unknown family %r" % (f,))
    if spec.t < 0:
        _fail(spec, "t must be nonnegative")
    if any(v < 0 for v in spec.a):
        _fail(spec, "a entries must be nonnegative")
    if any(v < 0 for v in spec.b):
        _fail(spec, "b entries must be nonnegative")
    r = spec.r

    if f == TWO_ONE:
        _require_unused(spec, b=True, c=True, t=True)
        if r < 1 or len(spec.a) != r:
            _fail(spec, "needs r >= 1 with len(a) == r")
        if spec.a[0] < 1:
            _fail(spec, "leading 2-run must be nonempty (a_1 >= 1)")
    elif f == TWO_ONE_TWO:
        _require_unused(spec, b=True, c=True, t=True)
        if r < 0 or len(spec.a) != r + 1:
            _fail(spec, "needs r >= 0 with len(a) == r + 1")
        if spec.a[-1] < 1:
            _fail(spec, "trailing 2-run must be nonempty (a_{r+1} >= 1)")
    elif f in (C21, C212):
        if r < 1 or not len(spec.a) == len(spec.b) == len(spec.c) == r:
            _fail(spec, "needs r >= 1 with len(a) == len(b) == len(c) == r")
        if any(v < 3 for v in spec.c):
            _fail(spec, "every c_j must be >= 3")
        if f == C21 and spec.t != 0:
            _fail(spec, "parameter t is not used by this family")
        if f == C212 and spec.t < 1:
            _fail(spec, "trailing 2-run must be nonempty (t >= 1)")
    elif f in (ONE_C21, ONE_C212):
        if r < 0 or len(spec.a) != r + 1 or not len(spec.b) == len(spec.c) == r:
            _fail(spec, "needs r >= 0 with len(a) == r + 1 and "
                        "len(b) == len(c) == r")
        if any(v < 3 for v in spec.c):
            _fail(spec, "every c_j must be >= 3")
        if f == ONE_C21 and spec.t != 0:
            _fail(spec, "parameter t is not used by this family")
        if f == ONE_C212 and spec.t < 1:
            _fail(spec, "trailing 2-run must be nonempty (t >= 1)")
    elif f == TWO_ONE_C2:
        if r < 1 or not len(spec.a) == len(spec.b) == len(spec.c) == r:
            _fail(spec, "needs r >= 1 with len(a) == len(b) == len(c) == r")
        if any(v < 3 for v in spec.c):
            _fail(spec, "every c_j must be >= 3")
    elif f == C2_TWO_ONE_C2:
        if r < 0 or len(spec.a) != r or not len(spec.b) == len(spec.c) == r + 1:
            _fail(spec, "needs r >= 0 with len(a) == r and "
                        "len(b) == len(c) == r + 1")
        if any(v < 3 for v in spec.c):
            _fail(spec, "every c_j must be >= 3")
    elif f == ONES_C:
        _require_unused(spec, b=True)
        if r < 0 or not len(spec.a) == len(spec.c) == r:
            _fail(spec, "needs len(a) == len(c) == r")
        if any(v < 1 for v in spec.c):
            _fail(spec, "every c_j must be >= 1")
        if r == 0 and spec.t < 1:
            _fail(spec, "empty spec; needs r >= 1 or t >= 1")


def build_lhs(spec: FamilySpec) -> SignedIndex:
    """Fully expanded left-hand argument composition (runs written out)."""
    f = spec.family
    parts: List[int] = []
    if f == TWO_ONE:
        for aj in spec.a:
            parts += [2] * aj + [1]
    elif f == TWO_ONE_TWO:
        for aj in spec.a[:-1]:
            parts += [2] * aj + [1]
        parts += [2] * spec.a[-1]
    elif f in (C21, C212):
        for bj, cj, aj in zip(spec.b, spec.c, spec.a):
            parts += [2] * bj + [cj] + [2] * aj + [1]
        parts += [2] * spec.t
    elif f in (ONE_C21, ONE_C212):
        parts += [2] * spec.a[0] + [1]
        for bj, cj, aj in zip(spec.b, spec.c, spec.a[1:]):
            parts += [2] * bj + [cj] + [2] * aj + [1]
        parts += [2] * spec.t
    elif f == TWO_ONE_C2:
        for aj, bj, cj in zip(spec.a, spec.b, spec.c):
            parts += [2] * aj + [1] + [2] * bj + [cj]
        parts += [2] * spec.t
    elif f == C2_TWO_ONE_C2:
        parts += [2] * spec.b[0] + [spec.c[0]]
        for j in range(spec.r):
            parts += [2] * spec.a[j] + [1]
            parts += [2] * spec.b[j + 1] + [spec.c[j + 1]]
        parts += [2] * spec.t
    else:  # ONES_C
        for aj, cj in zip(spec.a, spec.c):
            parts += [1] * aj + [cj]
        parts += [1] * spec.t
    return SignedIndex(parts)


def _ones_runs(parts: Tuple[int, ...]) -> Tuple[List[Tuple[int, int]], int]:
    """Split into maximal 1-runs around the parts >= 2.

    Returns ([(run_before, c), ...], trailing_run).  Entries given as c_j = 1
    in a FamilySpec are thereby re-absorbed into the neighbouring runs, which
    is the canonical shape the expansion below is stated for.
    """
    blocks: List[Tuple[int, int]] = []
    run = 0
    for p in parts:
        if p == 1:
            run += 1
        else:
            blocks.append((run, p))
            run = 0
    return blocks, run


def build_rhs(spec: FamilySpec) -> RhsForm:
    """Base index, per-image coefficient base, global sign and companion."""
    f = spec.family
    if f == TWO_ONE:
        base = [2 * aj + 1 for aj in spec.a]
        return RhsForm(SignedIndex(base), 2, 1, BIG)
    if f == TWO_ONE_TWO:
        base = [2 * aj + 1 for aj in spec.a[:-1]] + [-2 * spec.a[-1]]
        return RhsForm(SignedIndex(base), 2, -1, BIG)
    if f in (C21, C212):
        base = []
        for bj, cj, aj in zip(spec.b, spec.c, spec.a):
            base += [-(2 * bj + 2)] + [1] * (cj - 3) + [-(2 * aj + 2)]
        if f == C212:
            base.append(-2 * spec.t)
            return RhsForm(SignedIndex(base), 2, -1, BIG)
        return RhsForm(SignedIndex(base), 2, 1, BIG)
    if f in (ONE_C21, ONE_C212):
        base = [2 * spec.a[0] + 1]
        for bj, cj, aj in zip(spec.b, spec.c, spec.a[1:]):
            base += [-(2 * bj + 2)] + [1] * (cj - 3) + [-(2 * aj + 2)]
        if f == ONE_C212:
            base.append(-2 * spec.t)
            return RhsForm(SignedIndex(base), 2, -1, BIG)
        return RhsForm(SignedIndex(base), 2, 1, BIG)
    if f == TWO_ONE_C2:
        base = [2 * spec.a[0] + 1]
        for j in range(spec.r):
            base += [-(2 * spec.b[j] + 2)] + [1] * (spec.c[j] - 3)
            if j < spec.r - 1:
                base.append(-(2 * spec.a[j + 1] + 2))
            else:
                base.append(2 * spec.t + 1)
        return RhsForm(SignedIndex(base), 2, -1, BIG)
    if f == C2_TWO_ONE_C2:
        base = []
        for j in range(spec.r + 1):
            base += [-(2 * spec.b[j] + 2)] + [1] * (spec.c[j] - 3)
            if j < spec.r:
                base.append(-(2 * spec.a[j] + 2))
            else:
                base.append(2 * spec.t + 1)
        return RhsForm(SignedIndex(base), 2, -1, BIG)
    # ONES_C: canonicalize through the expanded composition so that inner
    # runs created by c_j = 1 entries are merged before the base is formed.
    parts = build_lhs(spec).parts
    blocks, trail = _ones_runs(parts)
    if not blocks:
        return RhsForm(SignedIndex((-len(parts),)), 1, -1, SMALL)
    base = [-(blocks[0][0] + 1)] + [1] * (blocks[0][1] - 2)
    for run, cj in blocks[1:]:
        base += [run + 2] + [1] * (cj - 2)
    base.append(trail + 1)
    return RhsForm(SignedIndex(base), 1, -1, SMALL)


def rhs_value(spec: FamilySpec, n: int):
    """Right-hand side at n through the aggregated companion pass."""
    form = build_rhs(spec)
    return pi_companion_sum(form.base, form.coeff_base, form.sign,
                            form.companion, n)


def rhs_value_expanded(spec: FamilySpec, n: int):
    """Right-hand side at n summed image by image.

    Slow route kept deliberately separate from rhs_value: expanding with
    pi_expand_weighted and evaluating every image through the plain
    companion evaluators exercises none of the aggregation shortcuts.
    """
    form = build_rhs(spec)
    evaluate = mollified_big if form.companion == BIG else mollified_small
    total = rational(0)
    for idx, coeff in pi_expand_weighted(form.base, form.coeff_base, form.sign):
        total += coeff * evaluate(n, idx)
    return total


def verify_instance(spec: FamilySpec, n: int) -> dict:
    """Exact comparison of both sides at a single n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs = mhs_star(n, build_lhs(spec))
    rhs = rhs_value(spec, n)
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def enumerate_specs(family: str, *, r_values: Iterable[int],
                    a_values: Iterable[int] = (0,),
                    b_values: Iterable[int] = (0,),
                    c_values: Iterable[int] = (3,),
                    t_values: Iterable[int] = (0,)) -> Iterator[FamilySpec]:
    """All valid specs over the given per-slot value pools.

    Deterministic order: r ascending as supplied, then odometer order over
    the a slots, b slots, c slots and t.  Values a family's invariants
    forbid in a given slot (for example a leading 2-run of length zero) are
    skipped rather than reported as errors, so the pools may be shared
    across slots.
    """
    av = tuple(a_values)
    bv = tuple(b_values)
    cv = tuple(c_values)
    tv = tuple(t_values)
    a_pos = tuple(v for v in av if v >= 1)
    c3 = tuple(v for v in cv if v >= 3)
    c1 = tuple(v for v in cv if v >= 1)
    t_pos = tuple(v for v in tv if v >= 1)
    t_any = tuple(v for v in tv if v >= 0)

    for r in r_values:
        if family == TWO_ONE:
            if r < 1:
                continue
            for a in itertools.product(a_pos, *(av,) * (r - 1)):
                yield FamilySpec(TWO_ONE, a=a)
        elif family == TWO_ONE_TWO:
            if r < 0:
                continue
            for a in itertools.product(*(av,) * r, a_pos):
                yield FamilySpec(TWO_ONE_TWO, a=a)
        elif family in (C21, C212):
            if r < 1:
                continue
            trange = t_pos if family == C212 else (0,)
            for a in itertools.product(*(av,) * r):
                for b in itertools.product(*(bv,) * r):
                    for c in itertools.product(*(c3,) * r):
                        for t in trange:
                            yield FamilySpec(family, a=a, b=b, c=c, t=t)
        elif family in (ONE_C21, ONE_C212):
            if r < 0:
                continue
            trange = t_pos if family == ONE_C212 else (0,)
            for a in itertools.product(*(av,) * (r + 1)):
                for b in itertools.product(*(bv,) * r):
                    for c in itertools.product(*(c3,) * r):
                        for t in trange:
                            yield FamilySpec(family, a=a, b=b, c=c, t=t)
        elif family == TWO_ONE_C2:
            if r < 1:
                continue
            for a in itertools.product(*(av,) * r):
                for b in itertools.product(*(bv,) * r):
                    for c in itertools.product(*(c3,) * r):
                        for t in t_any:
                            yield FamilySpec(family, a=a, b=b, c=c, t=t)
        elif family == C2_TWO_ONE_C2:
            if r < 0:
                continue
            for a in itertools.product(*(av,) * r):
                for b in itertools.product(*(bv,) * (r + 1)):
                    for c in itertools.product(*(c3,) * (r + 1)):
                        for t in t_any:
                            yield FamilySpec(family, a=a, b=b, c=c, t=t)
        elif family == ONES_C:
            if r < 0:
                continue
            if r == 0:
                for t in t_pos:
                    yield FamilySpec(ONES_C, t=t)
                continue
            for a in itertools.product(*(av,) * r):
                for c in itertools.product(*(c1,) * r):
                    for t in t_any:
                        yield FamilySpec(ONES_C, a=a, c=c, t=t)
        else:
            raise ValueError("unknown family %r" % (family,))


def _spec_cells(spec: FamilySpec, n_max: int, failures_only: bool,
                timings: bool) -> Tuple[List[dict], int, int]:
    """verify_instance over n = 1..n_max for one spec.

    Returns (records, passed, failed); passing records are dropped when
    failures_only is set, so huge sweeps stay in memory.
    """
    records: List[dict] = []
    passed = failed = 0
    lhs_index = build_lhs(spec)
    form = build_rhs(spec)
    for n in range(1, n_max + 1):
        started = time.perf_counter() if timings else 0.0
        lhs = mhs_star(n, lhs_index)
        rhs = pi_companion_sum(form.base, form.coeff_base, form.sign,
                               form.companion, n)
        ok = lhs == rhs
        if ok:
            passed += 1
            if failures_only:
                continue
        else:
            failed += 1
        record = spec.params()
        record["n"] = n
        record["equal"] = ok
        record["elapsed_ms"] = (
            int((time.perf_counter() - started) * 1000) if timings else 0)
        if not ok or not failures_only:
            record["lhs"] = rat_str(lhs)
            record["rhs"] = rat_str(rhs)
        records.append(record)
    return records, passed, failed


def _spec_cells_task(args):
    return _spec_cells(*args)


def verify_sweep(family: str, param_ranges: dict, n_max: int, *,
                 failures_only: bool = False, workers: int = 1,
                 timings: bool = False) -> dict:
    """Verify every (spec, n) cell of a parameter grid.

    param_ranges maps any of "r", "a", "b", "c", "t" to value pools (see
    enumerate_specs).  Cells are independent; with workers > 1 they are
    fanned out per spec and merged back in enumeration order.  With
    failures_only the per-cell records of passing cells are omitted (the
    summary still counts them), which is how the full acceptance grid stays
    within memory.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    specs = list(enumerate_specs(
        family,
        r_values=param_ranges.get("r", (1,)),
        a_values=param_ranges.get("a", (0,)),
        b_values=param_ranges.get("b", (0,)),
        c_values=param_ranges.get("c", (3,)),
        t_values=param_ranges.get("t", (0,)),
    ))
    results: List[dict] = []
    passed = failed = 0
    if workers > 1 and len(specs) > 1:
        tasks = [(spec, n_max, failures_only, timings) for spec in specs]
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for records, ok_count, bad_count in pool.map(
                    _spec_cells_task, tasks, chunksize=chunk):
                results.extend(records)
                passed += ok_count
                failed += bad_count
    else:
        for spec in specs:
            records, ok_count, bad_count = _spec_cells(
                spec, n_max, failures_only, timings)
            results.extend(records)
            passed += ok_count
            failed += bad_count
    return {
        "family": family,
        "n_max": n_max,
        "specs": len(specs),
        "results": results,
        "summary": {
            "cells": passed + failed,
            "passed": passed,
            "failed": failed,
        },
    }


# ---------------------------------------------------------------------------
# binomial-kernel identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelParams:
    """Parameters of the kernel identities: kernel order m, signed or
    unsigned kind, outer exponent a, shift c and inner index v."""

    m: int = 1
    kind: str = "A"
    a: int = 0
    c: int = 1
    v: SignedIndex = EMPTY

    def __post_init__(self):
        object.__setattr__(self, "v", as_index(self.v))
        if self.m not in (1, 2):
            raise ValueError("kernel order m must be 1 or 2")
        if self.kind not in ("A", "B"):
            raise ValueError("kernel kind must be 'A' or 'B'")
        if self.a < 0:
            raise ValueError("exponent a must be nonnegative")


def _kernel_row(kind: str, m: int, n: int, cache: BinomialCache) -> List:
    """K[k] for k = 0..n with K = (-1)^k C(mn, n-k) c_n ("A") or its
    unsigned counterpart ("B"); c_n is 1 for m = 1 and (n!)^2/(2n)! for
    m = 2, so that |K| = C(n,k)/C(n+k,k) in the damped case."""
    if m == 1:
        cn = rational(1)
    else:
        cn = rational(factorial(n) ** 2, factorial(2 * n))
    row = [rational(0)] * (n + 1)
    for k in range(1, n + 1):
        value = cache.choose(m * n, n - k) * cn
        if kind == "A" and k % 2 == 1:
            value = -value
        row[k] = value
    return row


def _kernel_sum(v_parts: Tuple[int, ...], expo: int, row: List, n: int):
    # sum_{k=1..n} H_{k-1}(v) K_{n,k} / k^expo; expo = -1 gives the k-weighted
    # form that appears on the right of the two difference identities
    total = rational(0)
    for k in range(1, n + 1):
        h = mhs(k - 1, v_parts) if v_parts else rational(1)
        if h == 0:
            continue
        total += h * row[k] / rational(k) ** expo
    return total


def _compositions(total: int) -> Iterator[Tuple[int, ...]]:
    """Positive integer compositions of total (the empty one for 0)."""
    if total == 0:
        yield ()
        return
    for mask in range(1 << (total - 1)):
        comp = []
        run = 1
        for i in range(total - 1):
            if mask >> i & 1:
                comp.append(run)
                run = 1
            else:
                run += 1
        comp.append(run)
        yield tuple(comp)


def _shift_compositions(weight: int, a: int,
                        negative_last: bool) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """All (j, x) with j >= 0, x nonempty and j + |x| = weight.

    The final component of x must exceed a in magnitude; it is positive like
    the rest of x by default and negative when negative_last is set.
    """
    for j in range(weight):
        w = weight - j
        for last in range(a + 1, w + 1):
            for prefix in _compositions(w - last):
                yield j, prefix + (-last if negative_last else last,)


def check_lemma31(variant: str, kp: KernelParams, n: int) -> bool:
    """Exact check of one of the four kernel summation identities.

    Variants "i"/"iii" trade an outer 1/n^c for a shifted exponent plus a
    composition-indexed correction (signed kernel throughout for "i";
    unsigned kernel on the plain terms and signed kernel under the
    corrections for "iii", whose correction compositions end in a negative
    component).  Variants "ii"/"iv" are the k-weighted difference forms and
    need the damped kernels (m = 2) with a >= 1.
    """
    if variant not in ("i", "ii", "iii", "iv"):
        raise ValueError("variant must be one of 'i', 'ii', 'iii', 'iv'")
    if n < 1:
        raise ValueError("n must be >= 1")
    m, a, c, v = kp.m, kp.a, kp.c, kp.v.parts
    if variant in ("i", "iii") and c < 1:
        raise ValueError("variants 'i' and 'iii' need c >= 1")
    if variant in ("ii", "iv"):
        if m != 2:
            raise ValueError("variants 'ii' and 'iv' need m = 2")
        if a < 1:
            raise ValueError("variants 'ii' and 'iv' need a >= 1")
    expected_kind = {"i": "A", "ii": "B", "iii": "B", "iv": "A"}[variant]
    if kp.kind != expected_kind:
        raise ValueError("variant %r uses kernel kind %r"
                         % (variant, expected_kind))

    cache = BinomialCache(m * n)
    row_a = _kernel_row("A", m, n, cache)
    row_b = _kernel_row("B", m, n, cache)

    if variant == "i":
        lhs = _kernel_sum(v, a, row_a, n) / rational(n) ** c
        rhs = _kernel_sum(v, a + c, row_a, n)
        for j, x in _shift_compositions(a + c, a, negative_last=False):
            rhs += m ** len(x) * _kernel_sum(x + v, j, row_a, n)
        return lhs == rhs
    if variant == "iii":
        lhs = _kernel_sum(v, a, row_b, n) / rational(n) ** c
        rhs = _kernel_sum(v, a + c, row_b, n)
        for j, x in _shift_compositions(a + c, a, negative_last=True):
            rhs += m ** len(x) * _kernel_sum(x + v, j, row_a, n)
        return lhs == rhs
    if variant == "ii":
        lhs = n * _kernel_sum(v, a, row_b, n)
        rhs = _kernel_sum(v, a - 1, row_b, n)
        rhs += 2 * _kernel_sum((a,) + v, -1, row_b, n)
        return lhs == rhs
    # variant "iv"
    lhs = n * _kernel_sum(v, a, row_a, n)
    rhs = _kernel_sum(v, a - 1, row_a, n)
    rhs += 2 * _kernel_sum((-a,) + v, -1, row_b, n)
    return lhs == rhs


# ---------------------------------------------------------------------------
# small closed forms
# ---------------------------------------------------------------------------

def check_ones_bar_one(a: int, n: int) -> bool:
    """H*_n({1}^a, -1) against its alternating binomial closed form."""
    if a < 0 or n < 1:
        raise ValueError("need a >= 0 and n >= 1")
    lhs = mhs_star(n, (1,) * a + (-1,))
    cache = BinomialCache(n)
    rhs = rational(0)
    for k in range(1, n + 1):
        term = rational((2 ** k - 1) * cache.choose(n, k), k ** (a + 1))
        rhs += -term if k % 2 else term
    return lhs == rhs


def check_tail_weight_sum(l: int, n: int) -> bool:
    """2 sum_{k=l+1}^n k C(n,k)/C(n+k,k) against both closed forms."""
    if not 0 <= l < n:
        raise ValueError("need 0 <= l < n")
    cache = BinomialCache(2 * n)
    total = rational(0)
    for k in range(l + 1, n + 1):
        total += rational(2 * k * cache.choose(n, k), cache.choose(n + k, k))
    first = rational(n * cache.choose(n - 1, l), cache.choose(n + l, l))
    second = rational((n - l) * cache.choose(n, l), cache.choose(n + l, l))
    return total == first and total == second


def check_geometric_sum(a: int, k: int, n: int) -> bool:
    """sum_{l=0}^a (n/k)^{2l} against its telescoped rational form."""
    if a < 0:
        raise ValueError("need a >= 0")
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    total = rational(0)
    for l in range(a + 1):
        total += rational(n ** (2 * l), k ** (2 * l))
    closed = rational(n ** (2 * a + 2) - k ** (2 * a + 2),
                      k ** (2 * a) * (n - k) * (n + k))
    return total == closed
