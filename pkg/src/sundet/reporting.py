"""Parameter sweeps and deterministic record serialization."""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Optional, TextIO

from .errors import ConsistencyError, DomainError
from .modmath import is_prime
from .sun_core import SunParams, VerificationRecord, composite_audit, verify_theorem

MODES = ("verify", "explore", "decompose", "composite-audit")
FORMATS = ("json-lines", "csv")
RECORD_FIELDS = (
    "n", "c", "d", "n_class", "symbol_d", "hypothesis_met", "d_mod_n2", "theorem_holds", "rank", "ms",
)
AUDIT_FIELDS = ("n", "prime_powers", "n_divides_vn", "valuation_bound_holds")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` (inclusive) or a single integer ``"a"``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
    except ValueError:
        raise DomainError(f"bad range {text!r}; expected 'a..b' or an integer") from None
    return v, v


@dataclass(frozen=True)
class SweepConfig:
    n_range: tuple[int, int]
    c_range: tuple[int, int] = (0, 0)
    d_range: tuple[int, int] = (0, 0)
    mode: str = "verify"
    output_format: str = "json-lines"
    output_path: Optional[str] = None  # None means standard output
    parallelism: int = 1
    timing: bool = False  # wall-clock ms makes output run-dependent

    def __post_init__(self):
        for name in ("n_range", "c_range", "d_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise DomainError(f"{name} is empty: {lo}..{hi}")
        if self.n_range[0] < 4:
            raise DomainError(f"n must start at 4 or above, got {self.n_range[0]}")
        if self.mode not in MODES:
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.output_format not in FORMATS:
            raise DomainError(f"unknown format {self.output_format!r}")
        if self.parallelism < 1:
            raise DomainError("parallelism must be positive")

    def cells(self) -> list[SunParams]:
        ns = range(self.n_range[0], self.n_range[1] + 1)
        if self.mode == "decompose":
            ns = [n for n in ns if is_prime(n)]
        return [
            SunParams(n, c, d)
            for n in ns
            for c in range(self.c_range[0], self.c_range[1] + 1)
            for d in range(self.d_range[0], self.d_range[1] + 1)
        ]


# -- record (de)serialization ------------------------------------------------

def record_to_row(rec: VerificationRecord) -> dict:
    return {
        "n": rec.params.n,
        "c": rec.params.c,
        "d": rec.params.d,
        "n_class": rec.n_class,
        "symbol_d": rec.symbol_d,
        "hypothesis_met": rec.hypothesis_met,
        "d_mod_n2": str(rec.d_mod_n2),
        "theorem_holds": rec.theorem_holds,
        "rank": rec.decomposition_rank,
        "ms": rec.ms,
    }


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv_line(values: Iterable) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow([_csv_cell(v) for v in values])
    return buf.getvalue().rstrip("\n")


def csv_header(fields: Iterable[str] = RECORD_FIELDS) -> str:
    return _csv_line(fields)


def serialize_record(rec: VerificationRecord, fmt: str = "json-lines") -> str:
    """One output line, without the trailing newline."""
    row = record_to_row(rec)
    if fmt == "json-lines":
        return json.dumps(row)
    if fmt == "csv":
        return _csv_line(row[k] for k in RECORD_FIELDS)
    raise DomainError(f"unknown format {fmt!r}")


def _bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise DomainError(f"bad boolean {text!r}")
    return text == "true"


def _opt(text: str, conv):
    return None if text == "" else conv(text)


def parse_record(line: str, fmt: str = "json-lines") -> VerificationRecord:
    if fmt == "json-lines":
        row = json.loads(line)
    elif fmt == "csv":
        values = next(csv.reader([line]))
        raw = dict(zip(RECORD_FIELDS, values))
        row = {
            "n": int(raw["n"]),
            "c": int(raw["c"]),
            "d": int(raw["d"]),
            "n_class": raw["n_class"],
            "symbol_d": _opt(raw["symbol_d"], int),
            "hypothesis_met": _bool(raw["hypothesis_met"]),
            "d_mod_n2": raw["d_mod_n2"],
            "theorem_holds": _bool(raw["theorem_holds"]),
            "rank": _opt(raw["rank"], int),
            "ms": _opt(raw["ms"], float),
        }
    else:
        raise DomainError(f"unknown format {fmt!r}")
    return VerificationRecord(
        params=SunParams(row["n"], row["c"], row["d"]),
        n_class=row["n_class"],
        symbol_d=row["symbol_d"],
        hypothesis_met=row["hypothesis_met"],
        d_mod_n2=int(row["d_mod_n2"]),
        theorem_holds=row["theorem_holds"],
        decomposition_rank=row["rank"],
        ms=row["ms"],
    )


def audit_row(n: int) -> dict:
    """Composite-audit outcome for one n: ``n | V_n`` and ``nu_p(V_n) >= n - p``."""
    audit = composite_audit(n)
    return {
        "n": n,
        "prime_powers": [[p, alpha, v] for p, (alpha, v) in audit.items()],
        "n_divides_vn": all(v >= alpha for alpha, v in audit.values()),
        "valuation_bound_holds": all(v >= n - p for p, (_, v) in audit.items()),
    }


def serialize_audit(row: dict, fmt: str = "json-lines") -> str:
    if fmt == "json-lines":
        return json.dumps(row)
    powers = ";".join(f"{p}^{a}:{v}" for p, a, v in row["prime_powers"])
    return _csv_line([row["n"], powers, row["n_divides_vn"], row["valuation_bound_holds"]])


# -- sweep driver -------------------------------------------------------------

def _evaluate(job: tuple[SunParams, bool]):
    params, decompose = job
    try:
        return verify_theorem(params, strict=False, decompose=decompose), None
    except ConsistencyError as exc:
        return None, f"{params}: {exc}"


def _evaluate_all(cells: list[SunParams], decompose: bool, jobs: int):
    work = [(cell, decompose) for cell in cells]
    if jobs == 1 or len(work) < 2:
        return list(map(_evaluate, work))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate, work, chunksize=max(1, len(work) // (4 * jobs))))


def _failures(rec: VerificationRecord, mode: str) -> list[str]:
    out = []
    if mode in ("verify", "decompose") and rec.violated:
        out.append(f"{rec.params}: hypothesis met but D mod n^2 = {rec.d_mod_n2}")
    if mode == "decompose" and rec.hypothesis_met and rec.decomposition_rank > rec.params.n - 2:
        out.append(f"{rec.params}: rank of M mod p is {rec.decomposition_rank} > p-2")
    return out


def run_sweep(config: SweepConfig, stderr: Optional[TextIO] = None) -> int:
    """Run the configured sweep, write sorted records, and return the exit status."""
    stderr = stderr or sys.stderr
    try:
        out = (
            open(config.output_path, "w", encoding="utf-8", newline="")
            if config.output_path
            else None
        )
    except OSError as exc:
        print(f"cannot open output: {exc}", file=stderr)
        return EXIT_USAGE
    stream = out or sys.stdout
    failures: list[str] = []
    try:
        if config.mode == "composite-audit":
            lo, hi = config.n_range
            rows = [audit_row(n) for n in range(lo, hi + 1) if not is_prime(n)]
            if config.output_format == "csv":
                stream.write(csv_header(AUDIT_FIELDS) + "\n")
            for row in rows:
                stream.write(serialize_audit(row, config.output_format) + "\n")
                if not (row["n_divides_vn"] and row["valuation_bound_holds"]):
                    failures.append(f"n={row['n']}: composite audit failed {row['prime_powers']}")
        else:
            cells = sorted(config.cells())
            results = _evaluate_all(cells, config.mode == "decompose", config.parallelism)
            if config.output_format == "csv":
                stream.write(csv_header() + "\n")
            for rec, err in results:
                if err is not None:
                    failures.append(err)
                    continue
                if not config.timing:
                    rec = replace(rec, ms=None)
                stream.write(serialize_record(rec, config.output_format) + "\n")
                if config.mode != "explore":
                    failures.extend(_failures(rec, config.mode))
    finally:
        if out is not None:
            out.close()
        else:
            stream.flush()
    for msg in failures:
        print(f"FAILED {msg}", file=stderr)
    return EXIT_FAILED if failures else EXIT_OK

