"""Problem specifications and result reports.

The JSON input format (one object per run):

    {
      "m": 3,
      "p": ["1/2", "1/2", "1/2"],
      "rho": ["0.2", "-0.3", "0.4"],      # or "mu2": [...], never both
      "options": {"mode": "rays", "objective": "none", "seed": 7, "n": 1000}
    }

Rationals are strings, either "a/b" or exact decimals ("0.3" means 3/10).
Pair arrays follow lexicographic pair order (1,2), (1,3), ..., (m-1,m).
Validation failures carry the JSON path of the offending field.

Reports are JSON objects with exact rational strings next to decimal
renderings; re-reading the exact fields loses nothing. All file writes are
atomic (temp file plus rename).
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

from .frechet import CorrelationSpec, Density, FrechetClass, PairMoments
from .tensor import parse_rational

DEFAULT_PRECISION = 12

MODES = ("rays", "direct")
OBJECTIVES = ("none", "min-higher-moments")


class SpecError(ValueError):
    """Invalid problem specification; message names the JSON path."""


@dataclass
class ProblemSpec:
    m: int
    p: tuple[Fraction, ...]
    rho: tuple[Fraction, ...] | None
    mu2: tuple[Fraction, ...] | None
    mode: str = "rays"
    objective: str = "none"
    seed: int | None = None
    n: int | None = None

    def frechet_class(self) -> FrechetClass:
        try:
            return FrechetClass(self.p)
        except ValueError as exc:
            raise SpecError(f"p: {exc}") from exc

    def correlation(self) -> CorrelationSpec | None:
        if self.rho is None:
            return None
        try:
            return CorrelationSpec(self.m, self.rho)
        except ValueError as exc:
            raise SpecError(f"rho: {exc}") from exc

    def pair_moments(self) -> PairMoments | None:
        if self.mu2 is None:
            return None
        try:
            return PairMoments(self.m, self.mu2)
        except ValueError as exc:
            raise SpecError(f"mu2: {exc}") from exc


def _want_int(obj: dict, key: str, path: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SpecError(f"{path}: expected an integer, got {v!r}")
    return v


def _rational_array(raw: Any, path: str, expected: int) -> tuple[Fraction, ...]:
    if not isinstance(raw, list):
        raise SpecError(f"{path}: expected an array of rational strings")
    if len(raw) != expected:
        raise SpecError(f"{path}: expected {expected} entries, got {len(raw)}")
    out = []
    for k, item in enumerate(raw):
        if not isinstance(item, (str, int)):
            raise SpecError(f"{path}[{k}]: expected a rational string, got {item!r}")
        try:
            out.append(parse_rational(str(item)))
        except ValueError as exc:
            raise SpecError(f"{path}[{k}]: {exc}") from exc
    return tuple(out)


def parse_problem_spec(obj: Any) -> ProblemSpec:
    if not isinstance(obj, dict):
        raise SpecError("top level: expected a JSON object")
    known = {"m", "p", "rho", "mu2", "options", "density"}
    for key in obj:
        if key not in known:
            raise SpecError(f"{key}: unknown field")
    m = _want_int(obj, "m", "m")
    if m < 1:
        raise SpecError(f"m: must be >= 1, got {m}")
    if "p" not in obj:
        raise SpecError("p: required")
    p = _rational_array(obj["p"], "p", m)
    npairs = m * (m - 1) // 2

    rho = mu2 = None
    if "rho" in obj and "mu2" in obj:
        raise SpecError("rho/mu2: give exactly one, not both")
    if "rho" in obj:
        rho = _rational_array(obj["rho"], "rho", npairs)
    if "mu2" in obj:
        mu2 = _rational_array(obj["mu2"], "mu2", npairs)

    options = obj.get("options", {})
    if not isinstance(options, dict):
        raise SpecError("options: expected an object")
    for key in options:
        if key not in {"mode", "objective", "seed", "n"}:
            raise SpecError(f"options.{key}: unknown option")
    mode = options.get("mode", "rays")
    if mode not in MODES:
        raise SpecError(f"options.mode: expected one of {MODES}, got {mode!r}")
    objective = options.get("objective", "none")
    if objective not in OBJECTIVES:
        raise SpecError(f"options.objective: expected one of {OBJECTIVES}, got {objective!r}")
    seed = options.get("seed")
    if seed is not None:
        seed = _want_int(options, "seed", "options.seed")
        if not 0 <= seed < 1 << 64:
            raise SpecError(f"options.seed: must fit in 64 bits, got {seed}")
    n = options.get("n")
    if n is not None:
        n = _want_int(options, "n", "options.n")
        if n < 0:
            raise SpecError(f"options.n: must be >= 0, got {n}")
    return ProblemSpec(m, p, rho, mu2, mode, objective, seed, n)


def parse_density_payload(obj: Any, m: int) -> Density:
    """Accept a bare array, {"values": [...]}, or a fit report carrying
    density.exact; always the canonical support order."""
    raw = obj
    if isinstance(raw, dict):
        if isinstance(raw.get("density"), dict) and "exact" in raw["density"]:
            raw = raw["density"]["exact"]
        elif "values" in raw:
            raw = raw["values"]
        elif "density" in raw:
            raw = raw["density"]
        else:
            raise SpecError("density: no recognizable density payload")
    vals = _rational_array(raw, "density", 1 << m)
    try:
        return Density(m, vals)
    except ValueError as exc:
        raise SpecError(f"density: {exc}") from exc


# ---------------------------------------------------------------------------
# rendering


def render_decimal(x: Fraction, precision: int = DEFAULT_PRECISION) -> str:
    with localcontext() as ctx:
        ctx.prec = precision
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return str(d)


def rational_field(x: Fraction, precision: int) -> dict:
    return {"exact": str(x), "decimal": render_decimal(x, precision)}


def vector_field(values: Sequence[Fraction], precision: int) -> dict:
    return {
        "exact": [str(v) for v in values],
        "decimal": [render_decimal(v, precision) for v in values],
    }


def support_labels(m: int, paper_order: bool) -> list[str]:
    """Support points as x1..xm bit strings, canonical or complemented order."""
    idx = range((1 << m) - 1, -1, -1) if paper_order else range(1 << m)
    return ["".join(str((j >> i) & 1) for i in range(m)) for j in idx]


def reorder_support(values: Sequence, paper_order: bool) -> list:
    """The complemented order is the canonical order reversed."""
    return list(reversed(values)) if paper_order else list(values)


def order_note(paper_order: bool) -> str:
    if paper_order:
        return (
            "complemented: row k is the componentwise complement of the "
            "ascending-binary point k (equivalently, canonical order reversed)"
        )
    return "canonical: row k is the point with x_i = bit (i-1) of k, k ascending"


# ---------------------------------------------------------------------------
# output


def write_json_atomic(payload: dict, path: str) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    _write_atomic(text, path)


def _write_atomic(text: str, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".bernray-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def rays_csv_text(columns: Sequence[Sequence[Fraction]], m: int, paper_order: bool) -> str:
    """One ray per column, exact cells, support labels in the first column."""
    import csv
    import io

    labels = support_labels(m, paper_order)
    buf = io.StringIO()
    buf.write(f"# support order: {order_note(paper_order)}\n")
    writer = csv.writer(buf)
    writer.writerow(["point"] + [f"ray_{k+1}" for k in range(len(columns))])
    rows = [reorder_support(col, paper_order) for col in columns]
    for r, label in enumerate(labels):
        writer.writerow([label] + [str(rows[k][r]) for k in range(len(columns))])
    return buf.getvalue()


def sample_csv_text(batch) -> str:
    import io

    buf = io.StringIO()
    batch.write_csv(buf)
    return buf.getvalue()
