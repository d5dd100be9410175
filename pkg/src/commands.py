"""
Command implementations behind the command-line interface.

Every command takes a RunConfig and a ResultWriter and returns a result
dictionary with "success", the printable "lines", a JSON-ready "payload"
and the "output_file" it wrote, if any.
"""
import argparse
import logging
import math
from fractions import Fraction
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.exactnum.bounded_float import to_bounded_float
from src.momentdensity.legendre import SupportInterval
from src.randstates.fields import ScalarField
from src.randstates.monte_carlo import mc_estimate
from src.recurrences.recurrence import fit_g2_record
from src.sepformulas.constants import q_neg_one_constant, q_zero_quarter_constant
from src.sepformulas.identities import (
    EXTERIOR_REFERENCES,
    ExteriorCase,
    exterior_probabilities,
    half_sum_identity_check,
    hyper2_value,
    root_window,
)
from src.sepformulas.p_formulas import P_ALPHAS, complement_value, p_envelope, p_value
from src.sepformulas.q_formulas import (
    q_closed_form,
    q_concise_sum,
    q_generalized,
    q_integer_alpha,
    q_integer_alpha_numeric,
    q_master,
    q_successive_diff,
    q_value,
)
from src.sepformulas.types import DEFAULT_PRECISION, Flag, SepValue
from src.study import ReconstructionStudy
from src.utils.errors import DomainError, SeparabilityError
from src.utils.output_handler import ResultWriter

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Result = Dict[str, Any]

DEFAULT_IDENTITY_ALPHAS = ["0", "1/4", "1/3", "1/2", "1", "3/2", "2", "7/10"]
NEG_ONE_CONSTANT_ALPHAS = ["-1/3", "2/3", "1/4", "-1/4", "-2/3"]
LOG_16_27 = math.log(16 / 27)
LOG_27_64 = math.log(27 / 64)
DIAGONAL_SLOPE = 0.486882


# ---------------------------------------------------------------------------
# Flag parsing
# ---------------------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """Parse "n/d", an integer or an exact decimal such as 0.5."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def parse_rational_list(text: str) -> List[Fraction]:
    return [parse_rational(part) for part in text.split(",") if part.strip()]


def parse_int_range(text: str) -> List[int]:
    """"a..b" inclusive; a single integer is a one-element range."""
    try:
        if ".." not in text:
            return [int(text)]
        lo, hi = text.split("..", 1)
        values = list(range(int(lo), int(hi) + 1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return values


def parse_rational_range(text: str) -> List[Fraction]:
    """"a..b[:step]" inclusive, rational endpoints and step (default 1)."""
    body, _, step_text = text.partition(":")
    step = parse_rational(step_text) if step_text else Fraction(1)
    if step <= 0:
        raise argparse.ArgumentTypeError(f"range step must be positive: {text!r}")
    if ".." not in body:
        return [parse_rational(body)]
    lo_text, hi_text = body.split("..", 1)
    lo, hi = parse_rational(lo_text), parse_rational(hi_text)
    values = []
    x = lo
    while x <= hi:
        values.append(x)
        x += step
    if not values:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return values


def parse_degree_bound(text: str) -> Union[int, Tuple[int, int, int]]:
    """A common degree bound "12" or a shape "d0,d1,d2"."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return int(parts[0])
        if len(parts) == 3:
            return tuple(int(p) for p in parts)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"degree bound must be d or d0,d1,d2: {text!r}")


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

class RunConfig(BaseModel):
    """Resolved settings of one command invocation."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    mode: Optional[str] = Field(None, description="Sub-mode: quantity for eval/table, analysis for asymptotics/check")
    k: int = 0
    alpha: Fraction = Fraction(1)
    k_values: List[int] = Field(default_factory=list)
    alpha_values: List[Fraction] = Field(default_factory=list)
    precision_bits: int = Field(DEFAULT_PRECISION, ge=16)
    seed: int = 20170101
    samples: int = 1_000_000
    threads: int = Field(1, ge=1)
    output_path: Optional[str] = None
    format: Literal["csv", "json"] = "csv"
    degree_bound: Optional[Union[int, Tuple[int, int, int]]] = None
    degrees: List[int] = Field(default_factory=list, description="Legendre degrees of a reconstruction study")
    tolerance: Optional[float] = None
    alpha_max: int = 40
    support: SupportInterval = Field(default_factory=SupportInterval)
    dump_path: Optional[str] = None

    @field_validator("alpha", mode="before")
    @classmethod
    def _coerce_alpha(cls, value):
        return value if isinstance(value, Fraction) else Fraction(str(value))

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.command == "table" and not (self.k_values and self.alpha_values):
            raise ValueError("table needs nonempty k and alpha ranges")
        return self


class FitReport(BaseModel):
    """Ordinary least-squares line through (x, y) points."""

    mode: str
    points: List[Tuple[float, float]]
    slope: float
    intercept: float
    r_squared: float = Field(..., ge=0, le=1)
    reference: Optional[float] = Field(None, description="Value the slope (or ratio) is compared with")
    rejected: List[str] = Field(default_factory=list, description="Points dropped because a logarithm was undefined")

    @classmethod
    def fit(cls, mode: str, points: Sequence[Tuple[float, float]], reference: Optional[float] = None,
            rejected: Optional[List[str]] = None) -> "FitReport":
        if len(points) < 2:
            raise DomainError(f"a line fit needs at least two points, got {len(points)}")
        xs = np.array([p[0] for p in points], dtype=float)
        ys = np.array([p[1] for p in points], dtype=float)
        slope, intercept = np.polyfit(xs, ys, 1)
        residual = ys - (slope * xs + intercept)
        ss_tot = float(np.sum((ys - ys.mean()) ** 2))
        r_squared = 1.0 if ss_tot == 0 else 1.0 - float(np.sum(residual ** 2)) / ss_tot
        return cls(mode=mode, points=[(float(x), float(y)) for x, y in points], slope=float(slope),
                   intercept=float(intercept), r_squared=min(max(r_squared, 0.0), 1.0),
                   reference=reference, rejected=rejected or [])


def _result(command: str, lines: List[str], payload: Any, output_file: Optional[str] = None,
            success: bool = True) -> Result:
    return {"success": success, "command": command, "lines": lines, "payload": payload,
            "output_file": output_file}


def _write_rows(config: RunConfig, writer: ResultWriter, stem: str, header: List[str],
                rows: List[List[Any]], always: bool = False) -> Optional[str]:
    if config.output_path is None and not always:
        return None
    if config.format == "json":
        target = writer.resolve(config.output_path, stem, ".json")
        return str(writer.write_json([dict(zip(header, row)) for row in rows], target))
    target = writer.resolve(config.output_path, stem, ".csv")
    return str(writer.write_csv(header, rows, target))


# ---------------------------------------------------------------------------
# eval / table
# ---------------------------------------------------------------------------

def _evaluate(mode: str, k: int, alpha: Fraction, precision_bits: int) -> SepValue:
    if mode == "q":
        return q_value(k, alpha, precision_bits)
    if mode == "p":
        return p_value(k, alpha)
    if mode == "complement":
        return complement_value(k, alpha)
    if mode == "master":
        return q_master(k, alpha, precision_bits)
    if mode == "closed":
        return q_closed_form(k, alpha, precision_bits)
    if mode == "generalized":
        return q_generalized(k, alpha, precision_bits)
    if mode == "concise":
        return q_concise_sum(k, alpha, precision_bits=precision_bits)
    if mode == "envelope":
        return p_envelope(k, alpha, precision_bits)
    if mode == "diff":
        return q_successive_diff(k, alpha, precision_bits)
    raise DomainError(f"unknown quantity {mode!r}")


def cmd_eval(config: RunConfig, writer: ResultWriter) -> Result:
    """Evaluate one quantity at (k, alpha) and print it exactly when possible."""
    mode = config.mode or "q"
    value = _evaluate(mode, config.k, config.alpha, config.precision_bits)
    for flag in value.flags:
        logger.warning(f"{mode}({config.k}, {config.alpha}): {flag.value}")
    record = value.to_record(config.k, config.alpha)
    lines = [value.display()]
    if not (value.is_exact and value.exact.is_rational):
        lines.append(f"abs_error <= {record.abs_error}")
    lines.append(f"method: {value.method}")
    output_file = None
    if config.output_path:
        output_file = str(writer.write_json(record.model_dump(mode="json"), config.output_path))
    return _result("eval", lines, record.model_dump(mode="json"), output_file)


def _log_text(value: SepValue, precision_bits: int) -> str:
    bounded = value.bounded(precision_bits)
    if bounded.value - bounded.abs_error <= 0:
        return ""
    with mpmath.workprec(precision_bits):
        return mpmath.nstr(mpmath.log(bounded.value), 20)


def cmd_table(config: RunConfig, writer: ResultWriter) -> Result:
    """Grid of values, k outer and alpha inner, written as CSV or JSON."""
    mode = config.mode or "q"
    header = ["k", "alpha", "value", "log_value", "mode"]
    rows = []
    floats: Dict[Fraction, List[Tuple[int, float]]] = {}
    for k in config.k_values:
        for alpha in config.alpha_values:
            try:
                value = _evaluate(mode, k, alpha, config.precision_bits)
                rows.append([k, str(alpha), value.display(), _log_text(value, config.precision_bits), value.method])
                floats.setdefault(alpha, []).append((k, float(value)))
            except SeparabilityError as e:
                logger.warning(f"table cell ({k}, {alpha}) failed: {e}")
                rows.append([k, str(alpha), "", "", "error"])
    logger.info(f"Table of {mode}: {len(rows)} cells")

    not_monotone = []
    for alpha, series in floats.items():
        values = [v for _, v in sorted(series)]
        if any(b <= a for a, b in zip(values, values[1:])):
            not_monotone.append(str(alpha))
    if not_monotone:
        logger.warning(f"{mode} is not increasing in k at alpha = {', '.join(not_monotone)}")

    output_file = _write_rows(config, writer, f"table_{mode}", header, rows, always=True)
    lines = [f"{len(rows)} rows ({sum(1 for r in rows if r[4] == 'error')} errors)",
             "increasing in k at every alpha" if not not_monotone
             else f"not increasing in k at alpha = {', '.join(not_monotone)}"]
    return _result("table", lines, {"rows": len(rows), "not_monotone": not_monotone}, output_file)


# ---------------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------------

def _p_bounded(k: int, alpha: Fraction, precision_bits: int):
    value = p_value(k, alpha)
    return to_bounded_float(value.exact, precision_bits).value


def loglog_p_points(alpha: Fraction, ks: Sequence[int], precision_bits: int) -> Tuple[List[Tuple[float, float]], List[str]]:
    """(k, log(-log P(k, alpha))) for the ks where the double logarithm is defined."""
    bits = max(precision_bits, 64 + 2 * max(ks))
    points, rejected = [], []
    for k in ks:
        with mpmath.workprec(bits):
            v = _p_bounded(k, alpha, bits)
            if not 0 < v < 1:
                rejected.append(f"k={k}: P={mpmath.nstr(v, 10)}")
                continue
            points.append((float(k), float(mpmath.log(-mpmath.log(v)))))
    return points, rejected


def p_log_ratio_points(alpha: Fraction, ks: Sequence[int], precision_bits: int) -> Tuple[List[Tuple[float, float]], List[str]]:
    """(k, log P(k+1, alpha) / log P(k, alpha))."""
    bits = max(precision_bits, 64 + 2 * (max(ks) + 1))
    points, rejected = [], []
    for k in ks:
        with mpmath.workprec(bits):
            v0 = _p_bounded(k, alpha, bits)
            v1 = _p_bounded(k + 1, alpha, bits)
            if not (0 < v0 < 1 and 0 < v1 < 1):
                rejected.append(f"k={k}: P outside (0, 1)")
                continue
            points.append((float(k), float(mpmath.log(v1) / mpmath.log(v0))))
    return points, rejected


def _q_numeric(k: int, alpha: int, precision_bits: int):
    return q_integer_alpha_numeric(k, alpha, precision_bits).value


def q_alpha_slope_points(k: int, alphas: Sequence[int], precision_bits: int) -> Tuple[List[Tuple[float, float]], List[str]]:
    """(alpha, log Q(k, alpha)) over integer alphas."""
    points, rejected = [], []
    for a in alphas:
        with mpmath.workprec(precision_bits):
            v = _q_numeric(k, a, precision_bits)
            if v <= 0:
                rejected.append(f"alpha={a}: Q={mpmath.nstr(v, 10)}")
                continue
            points.append((float(a), float(mpmath.log(v))))
    return points, rejected


def q_ratio_points(ks: Sequence[int], alpha1: int, alpha2: int, precision_bits: int) -> List[Tuple[float, float]]:
    """(k, Q(k, alpha2) / Q(k, alpha1))."""
    points = []
    for k in ks:
        with mpmath.workprec(precision_bits):
            points.append((float(k), float(_q_numeric(k, alpha2, precision_bits) / _q_numeric(k, alpha1, precision_bits))))
    return points


def diagonal_points(alphas: Sequence[int]) -> List[Tuple[float, float]]:
    """(alpha, alpha Q(alpha+1, alpha+1) / Q(alpha, alpha))."""
    return [(float(a), float(a * q_integer_alpha(a + 1, a + 1) / q_integer_alpha(a, a))) for a in alphas]


def _integer_alphas(values: Sequence[Fraction], default: Sequence[int]) -> List[int]:
    if not values:
        return list(default)
    if any(v.denominator != 1 for v in values):
        raise DomainError("this analysis needs integer alphas")
    return [int(v) for v in values]


def cmd_asymptotics(config: RunConfig, writer: ResultWriter) -> Result:
    """Assemble an asymptotic sequence and fit a line through it."""
    mode = config.mode or "loglog-p"
    bits = config.precision_bits
    rejected: List[str] = []
    if mode in ("loglog-p", "p-log-ratio"):
        if config.alpha not in P_ALPHAS:
            raise DomainError(f"{mode} needs alpha in 1/2, 1, 2, got {config.alpha}")
        alpha = config.alpha
        ks = config.k_values or list(range(1, 201))
        if mode == "loglog-p":
            points, rejected = loglog_p_points(alpha, ks, bits)
            reference = LOG_16_27
        else:
            points, rejected = p_log_ratio_points(alpha, ks, bits)
            reference = 16 / 27
    elif mode == "q-alpha-slope":
        points, rejected = q_alpha_slope_points(config.k, _integer_alphas(config.alpha_values, range(1, 41)), bits)
        reference = LOG_27_64
    elif mode == "q-ratio":
        pair = _integer_alphas(config.alpha_values, (100, 101))
        if len(pair) != 2:
            raise DomainError("q-ratio needs exactly two alphas")
        points = q_ratio_points(config.k_values or list(range(-1, 10)), pair[0], pair[1], bits)
        reference = 27 / 64
    elif mode == "diagonal":
        points = diagonal_points(_integer_alphas(config.alpha_values, range(1, 41)))
        reference = DIAGONAL_SLOPE
    else:
        raise DomainError(f"unknown asymptotics mode {mode!r}")

    for reason in rejected:
        logger.warning(f"Rejected point: {reason}")
    report = FitReport.fit(mode, points, reference, rejected)
    logger.info(f"{mode}: slope {report.slope:.7f}, reference {reference:.7f}")
    lines = [f"slope = {report.slope:.7f} (reference {reference:.7f})",
             f"intercept = {report.intercept:.7f}, r^2 = {report.r_squared:.9f}, {len(points)} points"]
    if mode in ("q-ratio", "p-log-ratio"):
        lines += [f"  k={int(x)}: {y:.7f}" for x, y in points]
    output_file = None
    if config.output_path:
        output_file = _write_rows(config, writer, f"asymptotics_{mode}", ["x", "y"], [list(p) for p in points])
    return _result("asymptotics", lines, report.model_dump(mode="json"), output_file)


# ---------------------------------------------------------------------------
# mc / reconstruct / fitrec
# ---------------------------------------------------------------------------

def cmd_mc(config: RunConfig, writer: ResultWriter) -> Result:
    """Monte Carlo estimate of Q and P, written as JSON."""
    field = ScalarField.from_alpha(config.alpha)
    result, pairs = mc_estimate(config.k, field, config.samples, config.seed, config.threads,
                                keep_pairs=config.dump_path is not None)
    payload = result.model_dump(mode="json")
    target = writer.resolve(config.output_path, f"mc_{field.value}_k{config.k}", ".json")
    output_file = str(writer.write_json(payload, target))
    if pairs is not None:
        writer.write_binary_pairs(pairs, config.dump_path)
    lines = [result.summary(),
             f"ptdet range [{result.extremes[0]:.6g}, {result.extremes[1]:.6g}]",
             f"mean diff {result.diff_moments[0]:.6g} +- {result.diff_moment_stderr[0]:.2g}"]
    return _result("mc", lines, payload, output_file)


def cmd_reconstruct(config: RunConfig, writer: ResultWriter) -> Result:
    """Legendre reconstruction study of the diff or ptdet moments."""
    kind = config.mode or "diff"
    study = ReconstructionStudy()
    result = study.run(kind=kind, k=config.k, alpha=config.alpha, degrees=config.degrees or None,
                       support=config.support, tolerance=config.tolerance,
                       precision_bits=config.precision_bits)
    lines = [f"degree {h['degree']}: tail {h['tail']:.8f}" for h in result.get("history", [])]
    lines += result.get("decision_trail", [])
    if result.get("success"):
        lines.insert(0, f"tail probability ~ {result['tail_probability']:.8f}"
                        + (f" (closed value {result['target']:.8f})" if result.get("target") is not None else ""))
    else:
        lines.insert(0, f"FAILED: {result.get('error')}")
    output_file = None
    if config.output_path:
        output_file = str(writer.write_json(result, config.output_path))
    return _result("reconstruct", lines, result, output_file, success=bool(result.get("success")))


def cmd_fitrec(config: RunConfig, writer: ResultWriter) -> Result:
    """Fit the G2 recurrence for one k over alpha = 1..alpha_max."""
    record = fit_g2_record(config.k, config.alpha_max, config.degree_bound)
    payload = record.model_dump(mode="json")
    if record.found:
        lines = [f"shape {record.shape}, round trip {'exact' if record.round_trip_exact else 'FAILED'}",
                 f"p0 = {record.p0}", f"p1 = {record.p1}", f"p2 = {record.p2}"]
        if record.structural is not None:
            lines.append(f"structural check {'passed' if record.structural.passed else 'failed'}")
            lines += record.structural.notes
    else:
        size = (f"shape {record.shape}" if len(set(record.shape)) > 1
                else f"common degree <= {record.shape[0]}")
        lines = [f"no recurrence with {size} on alpha = 1..{config.alpha_max} for k = {record.k}"]
    output_file = None
    if config.output_path:
        output_file = str(writer.write_json(payload, config.output_path))
    return _result("fitrec", lines, payload, output_file, success=record.found)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def check_identity(alphas: Sequence[Fraction], precision_bits: int) -> List[List[Any]]:
    rows = []
    for a in alphas:
        check = half_sum_identity_check(a, precision_bits)
        rows.append(["half-sum", str(a), mpmath.nstr(check.lhs.value, 30), mpmath.nstr(check.rhs.value, 30),
                     mpmath.nstr(check.residual.abs_error, 3), check.holds])
        if a > 0:
            value = hyper2_value(a, precision_bits)
            rows.append(["full-sum", str(a), mpmath.nstr(value.value, 30), "1/2",
                         mpmath.nstr(value.abs_error, 3), value.contains(Fraction(1, 2))])
    return rows


def check_telescoping(alphas: Sequence[int]) -> List[List[Any]]:
    rows = []
    for a in alphas:
        for k in range(-a, 10):
            direct = q_integer_alpha(k + 1, a) - q_integer_alpha(k, a)
            formula = q_successive_diff(k, a)
            ok = formula.is_exact and formula.exact.is_rational and formula.as_fraction() == direct
            rows.append(["telescoping", f"{a}", f"k={k}", str(direct), "", ok])
    return rows


def check_roots(alphas: Sequence[Fraction]) -> List[List[Any]]:
    rows = []
    for a in alphas:
        window = root_window(a)
        # Only integer alpha has an exact finite sum to confirm the root against
        ok = q_integer_alpha(int(-a - 1), int(a)) == 0 if a.denominator == 1 else None
        rows.append(["roots", str(a), f"[{window.k_end}, {window.k_start}]", str(window.count),
                     window.note or "", ok])
    return rows


def matches_printed(value: Any, printed: str) -> bool:
    """Whether a bounded value agrees with a decimal string to within one unit of its last digit."""
    decimals = len(printed.partition(".")[2])
    with mpmath.workprec(value.precision_bits + 16):
        gap = abs(value.value - mpmath.mpf(printed))
        return bool(gap <= mpmath.mpf(10) ** -decimals + value.abs_error)


def check_exterior(precision_bits: int) -> List[List[Any]]:
    rows = []
    for case in ExteriorCase:
        value = exterior_probabilities(case, precision_bits)
        printed = EXTERIOR_REFERENCES.get(case)
        ok = matches_printed(value, printed) if printed is not None else None
        rows.append(["exterior", case.value, mpmath.nstr(value.value, 12), printed or "numeric only",
                     mpmath.nstr(value.abs_error, 3), ok])
    return rows


def check_constants(precision_bits: int) -> List[List[Any]]:
    rows = []
    for text in NEG_ONE_CONSTANT_ALPHAS:
        a = Fraction(text)
        constant = q_neg_one_constant(a, precision_bits)
        try:
            direct_value = q_value(-1, a, precision_bits)
            direct = direct_value.bounded(precision_bits)
            shown = mpmath.nstr(direct.value, 25)
            if Flag.OUTSIDE_VERIFIED_RANGE in direct_value.flags:
                logger.info(f"Q(-1, {a}) lies outside its closed form's verified range; not compared")
                ok, shown = None, shown + " (unverified)"
            else:
                ok = constant.overlaps(direct)
        except SeparabilityError as e:
            logger.info(f"No independent route for Q(-1, {a}): {e}")
            ok, shown = None, "n/a"
        rows.append(["Q(-1)", text, mpmath.nstr(constant.value, 25), shown, mpmath.nstr(constant.abs_error, 3), ok])
    constant = q_zero_quarter_constant(precision_bits)
    direct = q_value(0, Fraction(1, 4), precision_bits).bounded(precision_bits)
    rows.append(["Q(0)", "1/4", mpmath.nstr(constant.value, 25), mpmath.nstr(direct.value, 25),
                 mpmath.nstr(constant.abs_error, 3), constant.overlaps(direct)])
    return rows


def cmd_check(config: RunConfig, writer: ResultWriter) -> Result:
    """Run one family of identity checks and report every row."""
    mode = config.mode or "identity"
    bits = config.precision_bits
    if mode == "identity":
        rows = check_identity(config.alpha_values or [Fraction(a) for a in DEFAULT_IDENTITY_ALPHAS], bits)
    elif mode == "telescoping":
        rows = check_telescoping(_integer_alphas(config.alpha_values, range(1, 13)))
    elif mode == "roots":
        rows = check_roots(config.alpha_values or [Fraction(a) for a in range(1, 11)])
    elif mode == "exterior":
        rows = check_exterior(bits)
    elif mode == "constants":
        rows = check_constants(bits)
    else:
        raise DomainError(f"unknown check {mode!r}")

    failed = [r for r in rows if r[5] is False]
    skipped = [r for r in rows if r[5] is None]
    passed = len(rows) - len(failed) - len(skipped)
    logger.info(f"check {mode}: {passed} passed, {len(failed)} failed, {len(skipped)} skipped")
    status = {True: "ok", False: "FAILED", None: "skipped"}
    lines = [f"{r[0]} {r[1]} {r[2]} {r[3]} +- {r[4]} {status[r[5]]}".replace("  ", " ") for r in rows]
    lines.append(f"{passed}/{len(rows)} passed, {len(skipped)} skipped")
    header = ["check", "alpha", "value", "reference", "bound", "passed"]
    output_file = _write_rows(config, writer, f"check_{mode}", header, rows)
    return _result("check", lines, {"rows": len(rows), "failed": len(failed), "skipped": len(skipped)},
                   output_file, success=not failed and passed > 0)


COMMANDS: Dict[str, Callable[[RunConfig, ResultWriter], Result]] = {
    "eval": cmd_eval,
    "table": cmd_table,
    "asymptotics": cmd_asymptotics,
    "mc": cmd_mc,
    "reconstruct": cmd_reconstruct,
    "fitrec": cmd_fitrec,
    "check": cmd_check,
}


def run_command(config: RunConfig, writer: Optional[ResultWriter] = None) -> Result:
    """Dispatch a configured command."""
    if config.command not in COMMANDS:
        raise DomainError(f"unknown command {config.command!r}")
    logger.info(f"Running {config.command} ({config.mode or 'default'})")
    result = COMMANDS[config.command](config, writer or ResultWriter())
    logger.info(f"Finished {config.command}: {'success' if result['success'] else 'failure'}")
    return result
