"""Campaign engine: run named inequalities over ranges with certified verdicts.

Each check sweeps a range of indices (or index pairs) and produces one of four
verdicts per subject: ``holds``, ``equality``, ``fails`` or ``undecided``.
Checks whose expression is rational in the table values run in exact integer
arithmetic and can never be undecided; the rest certify signs with interval
arithmetic on an adaptive precision ladder (double until resolved, undecided
past the cap, never guessed).  Equality is deliberately its own verdict: the
n = 2 log-concavity equality, the (n, m) = (2, 1) case and the third-order
zeros at n = 4, 5 are findings a report must surface, not fold into "holds".

Work is split into contiguous blocks of 256 subjects; blocks may be evaluated
by a thread pool and are reassembled in index order, so verdict vectors do not
depend on the worker count.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .exact_core import OverpartitionTable
from .intervals import (
    DEFAULT_BITS,
    MAX_BITS,
    CertifiedInterval,
    certify_sign,
    context,
    directed_decimal,
)
from .asymptotics import _mu_raw
from .ratio_bounds import (
    _bounds_pair_raw,
    _envelope_raw,
    _q_raw,
    higher_turan_integer,
    u_ratio,
)

BLOCK_SIZE = 256


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    EQUALITY = "equality"
    FAILS = "fails"
    UNDECIDED = "undecided"

    def __str__(self) -> str:  # plain value in reports
        return self.value


@dataclass(frozen=True)
class CheckSpec:
    """A named inequality, a range, an arithmetic mode and a start precision."""

    name: str
    from_n: int
    to_n: int
    mode: str = "exact"
    precision_bits: int = DEFAULT_BITS
    params: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.from_n > self.to_n:
            raise ValueError(f"empty range {self.from_n}..{self.to_n}")
        if self.mode not in ("exact", "interval"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class CheckItem:
    subject: str
    verdict: Verdict
    margin: str
    precision_bits: int


@dataclass
class CheckResult:
    spec: CheckSpec
    items: List[CheckItem]
    wall_time: float

    @property
    def counterexamples(self) -> List[str]:
        return [item.subject for item in self.items if item.verdict is Verdict.FAILS]

    @property
    def undecided(self) -> List[str]:
        return [item.subject for item in self.items if item.verdict is Verdict.UNDECIDED]

    @property
    def equalities(self) -> List[str]:
        return [item.subject for item in self.items if item.verdict is Verdict.EQUALITY]

    def count(self, verdict: Verdict) -> int:
        return sum(1 for item in self.items if item.verdict is verdict)

    @property
    def ok(self) -> bool:
        """True when nothing failed and nothing was left undecided."""
        return not self.counterexamples and not self.undecided

    def summary(self) -> str:
        return (f"{self.spec.name} [{self.spec.from_n}..{self.spec.to_n}]: "
                f"holds={self.count(Verdict.HOLDS)} equality={self.count(Verdict.EQUALITY)} "
                f"fails={self.count(Verdict.FAILS)} undecided={self.count(Verdict.UNDECIDED)} "
                f"({self.wall_time:.2f}s)")


# -- sweep machinery ---------------------------------------------------------------


def _run_sweep(
    spec: CheckSpec,
    subjects: Sequence,
    evaluate: Callable,
    workers: int = 1,
) -> CheckResult:
    start = time.perf_counter()
    if workers > 1 and len(subjects) > BLOCK_SIZE:
        blocks = [subjects[i:i + BLOCK_SIZE] for i in range(0, len(subjects), BLOCK_SIZE)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda block: [evaluate(s) for s in block], blocks))
        items = [item for chunk in chunks for item in chunk]
    else:
        items = [evaluate(s) for s in subjects]
    return CheckResult(spec=spec, items=items, wall_time=time.perf_counter() - start)


def _exact_item(subject: str, value: int) -> CheckItem:
    if value > 0:
        verdict = Verdict.HOLDS
    elif value == 0:
        verdict = Verdict.EQUALITY
    else:
        verdict = Verdict.FAILS
    return CheckItem(subject=subject, verdict=verdict, margin=str(value), precision_bits=0)


def _interval_item(
    subject: str,
    gaps_at: Callable[[int], List[CertifiedInterval]],
    start_bits: int,
) -> CheckItem:
    """Certify that every gap in the list is positive; fails on any certified
    negative; escalates precision otherwise."""
    bits = start_bits
    while True:
        gaps = gaps_at(bits)
        negative = [g for g in gaps if g.is_negative()]
        if negative:
            worst = min(negative, key=lambda g: g.hi_fraction())
            return CheckItem(subject, Verdict.FAILS,
                             directed_decimal(worst.hi_fraction(), round_up=True), bits)
        if all(g.is_positive() for g in gaps):
            margin = min(g.lo_fraction() for g in gaps)
            return CheckItem(subject, Verdict.HOLDS,
                             directed_decimal(margin, round_up=False), bits)
        if bits >= MAX_BITS:
            unresolved = min((g for g in gaps if not g.is_positive()),
                             key=lambda g: g.lo_fraction())
            margin = (directed_decimal(unresolved.lo_fraction(), round_up=False)
                      + ".." + directed_decimal(unresolved.hi_fraction(), round_up=True))
            return CheckItem(subject, Verdict.UNDECIDED, margin, bits)
        bits = min(2 * bits, MAX_BITS)


def _require_range(table: OverpartitionTable, low: int, high: int) -> None:
    if low < 0 or high > table.max_n:
        raise IndexError(
            f"check needs pbar({low}..{high}), table stops at {table.max_n}")


# -- exact checks -------------------------------------------------------------------


def check_log_concavity(
    table: OverpartitionTable,
    from_n: int,
    to_n: int,
    *,
    workers: int = 1,
) -> CheckResult:
    """Sign of pbar(n)^2 - pbar(n-1) pbar(n+1); equality occurs at n = 2."""
    if from_n < 1:
        raise IndexError("log-concavity needs n >= 1")
    _require_range(table, from_n - 1, to_n + 1)
    spec = CheckSpec("log-concavity", from_n, to_n, "exact")

    def evaluate(n: int) -> CheckItem:
        value = table[n] ** 2 - table[n - 1] * table[n + 1]
        return _exact_item(f"n={n}", value)

    return _run_sweep(spec, range(from_n, to_n + 1), evaluate, workers)


def check_strong_log_concavity(
    table: OverpartitionTable,
    from_n: int,
    to_n: int,
    *,
    m_policy: int = 1,
    workers: int = 1,
) -> CheckResult:
    """Sign of pbar(n)^2 - pbar(n-m) pbar(n+m) over all pairs with
    n in the range and m_policy <= m < n.

    ``m_policy`` selects the reading of the hypothesis (m >= 1 or m >= 2);
    both are audited because the stated equality case (n, m) = (2, 1) uses
    m = 1 while the hypothesis excludes it.
    """
    if m_policy not in (1, 2):
        raise ValueError(f"m_policy must be 1 or 2, got {m_policy}")
    if from_n < 2:
        raise IndexError("strong log-concavity needs n >= 2")
    _require_range(table, 0, 2 * to_n - 1)
    spec = CheckSpec("strong-log-concavity", from_n, to_n, "exact",
                     params={"m_policy": m_policy})
    subjects = [(n, m) for n in range(from_n, to_n + 1)
                for m in range(m_policy, n)]

    def evaluate(pair: Tuple[int, int]) -> CheckItem:
        n, m = pair
        value = table[n] ** 2 - table[n - m] * table[n + m]
        return _exact_item(f"n={n},m={m}", value)

    return _run_sweep(spec, subjects, evaluate, workers)


def check_multiplicative(
    table: OverpartitionTable,
    a_max: int,
    b_max: int,
    *,
    workers: int = 1,
) -> CheckResult:
    """Sign of pbar(a) pbar(b) - pbar(a+b) over 2 <= a <= b, a <= a_max,
    b <= b_max."""
    if a_max < 2 or b_max < a_max:
        raise ValueError(f"need 2 <= a_max <= b_max, got {a_max}, {b_max}")
    _require_range(table, 0, a_max + b_max)
    spec = CheckSpec("multiplicative", 2, b_max, "exact", params={"a_max": a_max})
    subjects = [(a, b) for a in range(2, a_max + 1) for b in range(a, b_max + 1)]

    def evaluate(pair: Tuple[int, int]) -> CheckItem:
        a, b = pair
        value = table[a] * table[b] - table[a + b]
        return _exact_item(f"a={a},b={b}", value)

    return _run_sweep(spec, subjects, evaluate, workers)


def check_higher_turan(
    table: OverpartitionTable,
    from_n: int,
    to_n: int,
    *,
    workers: int = 1,
) -> CheckResult:
    """Exact sign of the third-order expression
    4(1-u_n)(1-u_{n+1}) - (1-u_n u_{n+1})^2 (denominator cleared)."""
    if from_n < 1:
        raise IndexError("higher-turan needs n >= 1")
    _require_range(table, from_n - 1, to_n + 2)
    spec = CheckSpec("higher-turan", from_n, to_n, "exact")

    def evaluate(n: int) -> CheckItem:
        return _exact_item(f"n={n}", higher_turan_integer(table, n))

    return _run_sweep(spec, range(from_n, to_n + 1), evaluate, workers)


def check_u_monotone(
    table: OverpartitionTable,
    from_n: int,
    to_n: int,
    *,
    workers: int = 1,
) -> CheckResult:
    """Exact sign of u_{n+1} - u_n, cleared to
    pbar(n)^3 pbar(n+2) - pbar(n-1) pbar(n+1)^3; records where the ratio
    starts increasing instead of assuming a cited range."""
    if from_n < 1:
        raise IndexError("u-monotone needs n >= 1")
    _require_range(table, from_n - 1, to_n + 2)
    spec = CheckSpec("u-monotone", from_n, to_n, "exact")

    def evaluate(n: int) -> CheckItem:
        value = table[n] ** 3 * table[n + 2] - table[n - 1] * table[n + 1] ** 3
        return _exact_item(f"n={n}", value)

    return _run_sweep(spec, range(from_n, to_n + 1), evaluate, workers)


# -- interval checks ----------------------------------------------------------------


def check_delta2_log(
    table: OverpartitionTable,
    from_n: int,
    to_n: int,
    *,
    precision_bits: int = DEFAULT_BITS,
    workers: int = 1,
) -> CheckResult:
    """(pbar(n-1)/pbar(n)) (1 + pi/(4 n^{3/2})) >= pbar(n)/pbar(n+1),
    rearranged to the sign of
    pbar(n-1) pbar(n+1) (4 n^{3/2} + pi) - 4 n^{3/2} pbar(n)^2
    with pi (and sqrt n) interval-valued; degree-0 homogeneous in the table."""
    if from_n < 1:
        raise IndexError("delta2-log needs n >= 1")
    _require_range(table, from_n - 1, to_n + 1)
    spec = CheckSpec("delta2-log", from_n, to_n, "interval", precision_bits)

    def evaluate(n: int) -> CheckItem:
        outer = table[n - 1] * table[n + 1]
        square = table[n] ** 2

        def gaps(bits: int) -> List[CertifiedInterval]:
            ctx = context(bits)
            n32 = ctx.sqrt(ctx.mpf(n)) * n
            value = ctx.mpf(outer) * ctx.pi + 4 * n32 * ctx.mpf(outer - square)
            return [CertifiedInterval.from_ival(value, bits)]

        return _interval_item(f"n={n}", gaps, precision_bits)

    return _run_sweep(spec, range(from_n, to_n + 1), evaluate, workers)


def check_fg_sandwich(
    table: OverpartitionTable,
    from_n: int,
    to_n: int,
    *,
    precision_bits: int = DEFAULT_BITS,
    workers: int = 1,
) -> CheckResult:
    """Certify lower(n) < u_n < upper(n) for the envelope pair; claimed from
    n = 55, swept wherever asked."""
    if from_n < 2:
        raise IndexError("fg-sandwich needs n >= 2")
    _require_range(table, from_n - 1, to_n + 1)
    spec = CheckSpec("fg-sandwich", from_n, to_n, "interval", precision_bits)

    def evaluate(n: int) -> CheckItem:
        u = u_ratio(table, n).exact

        def gaps(bits: int) -> List[CertifiedInterval]:
            ctx = context(bits)
            lower, upper = _bounds_pair_raw(ctx, n)
            ui = ctx.mpf(u.numerator) / ctx.mpf(u.denominator)
            return [CertifiedInterval.from_ival(ui - lower, bits),
                    CertifiedInterval.from_ival(upper - ui, bits)]

        return _interval_item(f"n={n}", gaps, precision_bits)

    return _run_sweep(spec, range(from_n, to_n + 1), evaluate, workers)


def check_g_vs_f_shift(
    table: Optional[OverpartitionTable],
    from_n: int,
    to_n: int,
    *,
    precision_bits: int = DEFAULT_BITS,
    workers: int = 1,
) -> CheckResult:
    """Certify upper(n+1) < lower(n) + 1000/mu(n-1)^5 for n >= 2.

    Pure mu-arithmetic; the table argument is accepted for interface
    uniformity and unused."""
    if from_n < 2:
        raise IndexError("g-vs-f-shift needs n >= 2")
    spec = CheckSpec("g-vs-f-shift", from_n, to_n, "interval", precision_bits)

    def evaluate(n: int) -> CheckItem:
        def gaps(bits: int) -> List[CertifiedInterval]:
            ctx = context(bits)
            x = _mu_raw(ctx, n - 1)
            y = _mu_raw(ctx, n)
            z = _mu_raw(ctx, n + 1)
            w = _mu_raw(ctx, n + 2)
            lower_n = _envelope_raw(ctx, x, y, z, -1)
            upper_next = _envelope_raw(ctx, y, z, w, +1)
            value = lower_n + 1000 / x ** 5 - upper_next
            return [CertifiedInterval.from_ival(value, bits)]

        return _interval_item(f"n={n}", gaps, precision_bits)

    return _run_sweep(spec, range(from_n, to_n + 1), evaluate, workers)


def check_f_vs_q(
    table: OverpartitionTable,
    from_n: int,
    to_n: int,
    *,
    precision_bits: int = DEFAULT_BITS,
    workers: int = 1,
) -> CheckResult:
    """Certify lower(n) + 1000/mu(n-1)^5 < Q(u_n), Q applied to the exact
    ratio widened to a point interval; claimed from n = 92."""
    if from_n < 2:
        raise IndexError("f-vs-q needs n >= 2")
    _require_range(table, from_n - 1, to_n + 1)
    spec = CheckSpec("f-vs-q", from_n, to_n, "interval", precision_bits)

    def evaluate(n: int) -> CheckItem:
        u = u_ratio(table, n).exact

        def gaps(bits: int) -> List[CertifiedInterval]:
            ctx = context(bits)
            x = _mu_raw(ctx, n - 1)
            y = _mu_raw(ctx, n)
            z = _mu_raw(ctx, n + 1)
            lower_n = _envelope_raw(ctx, x, y, z, -1)
            ui = ctx.mpf(u.numerator) / ctx.mpf(u.denominator)
            value = _q_raw(ctx, ui) - lower_n - 1000 / x ** 5
            return [CertifiedInterval.from_ival(value, bits)]

        return _interval_item(f"n={n}", gaps, precision_bits)

    return _run_sweep(spec, range(from_n, to_n + 1), evaluate, workers)


# -- the pairwise threshold table -----------------------------------------------------


class BracketError(Exception):
    """The threshold equation failed to bracket; signals a regression in the
    S/T implementation, not a data condition."""


@dataclass(frozen=True)
class LambdaTable:
    """Certified solutions lambda_a of T_a(lambda) = log(4a) + log(S_a(lambda))
    for a in {2..5}, each an interval of width <= 1e-6."""

    entries: Dict[int, CertifiedInterval]


def pair_threshold_gap(a: int, lam: Fraction, precision_bits: int = DEFAULT_BITS) -> CertifiedInterval:
    """T_a(lambda) - log(4a) - log(S_a(lambda)) at exact rational lambda, where
    T_a(lambda) = pi (sqrt(a) + sqrt(lambda a) - sqrt(a + lambda a)) and
    S_a(lambda) = (1 + 1/(a + lambda a)) / ((1 - 1/sqrt(a))(1 - 1/sqrt(lambda a))).

    T is increasing and S decreasing in lambda >= 1, so the gap is strictly
    increasing: a certified sign change brackets the unique root.
    """
    if a < 2:
        raise ValueError(f"a must be at least 2, got {a}")
    if lam < 1:
        raise ValueError(f"lambda must be at least 1, got {lam}")
    ctx = context(precision_bits)
    lam_a = ctx.mpf(lam.numerator) * a / ctx.mpf(lam.denominator)
    sqrt_a = ctx.sqrt(ctx.mpf(a))
    sqrt_lam_a = ctx.sqrt(lam_a)
    t_val = ctx.pi * (sqrt_a + sqrt_lam_a - ctx.sqrt(a + lam_a))
    s_val = (1 + 1 / (a + lam_a)) / ((1 - 1 / sqrt_a) * (1 - 1 / sqrt_lam_a))
    gap = t_val - ctx.log(ctx.mpf(4 * a)) - ctx.log(s_val)
    return CertifiedInterval.from_ival(gap, precision_bits)


def _threshold_sign(a: int, lam: Fraction) -> int:
    sign, _ = certify_sign(lambda bits: pair_threshold_gap(a, lam, bits))
    if sign is None or sign == 0:
        raise BracketError(f"threshold gap sign undecided at a={a}, lambda={lam}")
    return sign


def solve_lambda_table(width: Fraction = Fraction(9, 10 ** 7)) -> LambdaTable:
    """Bisect the strictly increasing threshold gap for a in {2..5} down to
    rational bracket width <= ``width`` (certified signs at every step)."""
    entries: Dict[int, CertifiedInterval] = {}
    for a in range(2, 6):
        lo = Fraction(1)
        if _threshold_sign(a, lo) >= 0:
            raise BracketError(f"gap not negative at lambda=1 for a={a}")
        hi = Fraction(2)
        while _threshold_sign(a, hi) < 0:
            hi *= 2
            if hi > 64:
                raise BracketError(f"no sign change below lambda=64 for a={a}")
        while hi - lo > width:
            mid = (lo + hi) / 2
            if _threshold_sign(a, mid) < 0:
                lo = mid
            else:
                hi = mid
        entries[a] = CertifiedInterval.from_pair(lo, hi, DEFAULT_BITS)
    return LambdaTable(entries=entries)


# -- registry and campaign -------------------------------------------------------------


def _run_named(table: Optional[OverpartitionTable], spec: CheckSpec, workers: int) -> CheckResult:
    name = spec.name
    if name == "log-concavity":
        return check_log_concavity(table, spec.from_n, spec.to_n, workers=workers)
    if name == "strong-log-concavity":
        return check_strong_log_concavity(
            table, spec.from_n, spec.to_n,
            m_policy=spec.params.get("m_policy", 1), workers=workers)
    if name == "multiplicative":
        return check_multiplicative(
            table, spec.params.get("a_max", spec.to_n), spec.to_n, workers=workers)
    if name == "higher-turan":
        return check_higher_turan(table, spec.from_n, spec.to_n, workers=workers)
    if name == "u-monotone":
        return check_u_monotone(table, spec.from_n, spec.to_n, workers=workers)
    if name == "delta2-log":
        return check_delta2_log(table, spec.from_n, spec.to_n,
                                precision_bits=spec.precision_bits, workers=workers)
    if name == "fg-sandwich":
        return check_fg_sandwich(table, spec.from_n, spec.to_n,
                                 precision_bits=spec.precision_bits, workers=workers)
    if name == "g-vs-f-shift":
        return check_g_vs_f_shift(table, spec.from_n, spec.to_n,
                                  precision_bits=spec.precision_bits, workers=workers)
    if name == "f-vs-q":
        return check_f_vs_q(table, spec.from_n, spec.to_n,
                            precision_bits=spec.precision_bits, workers=workers)
    raise ValueError(f"unknown check {name!r}")


CHECK_NAMES = (
    "log-concavity",
    "strong-log-concavity",
    "multiplicative",
    "delta2-log",
    "higher-turan",
    "u-monotone",
    "fg-sandwich",
    "g-vs-f-shift",
    "f-vs-q",
)

EXACT_CHECKS = frozenset(
    ("log-concavity", "strong-log-concavity", "multiplicative", "higher-turan", "u-monotone"))


def table_requirement(spec: CheckSpec) -> int:
    """Largest index of pbar a check needs."""
    name, to_n = spec.name, spec.to_n
    if name in ("log-concavity", "delta2-log", "fg-sandwich", "f-vs-q"):
        return to_n + 1
    if name in ("higher-turan", "u-monotone"):
        return to_n + 2
    if name == "strong-log-concavity":
        return 2 * to_n - 1
    if name == "multiplicative":
        return spec.params.get("a_max", to_n) + to_n
    if name == "g-vs-f-shift":
        return 0
    raise ValueError(f"unknown check {name!r}")


def run_campaign(
    table: Optional[OverpartitionTable],
    specs: Sequence[CheckSpec],
    workers: int = 1,
) -> List[CheckResult]:
    """Run checks in order; verdict vectors are independent of ``workers``."""
    return [_run_named(table, spec, workers) for spec in specs]
