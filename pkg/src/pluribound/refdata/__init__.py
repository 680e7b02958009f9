"""Shipped reference tables and the engine-vs-table verifier.

The CSV files in this directory transcribe published threshold tables; they
were produced by a standalone script (``tools/gen_refdata.py``) that shares
no code with the engine, so agreement between the two is meaningful.  Files
are checksummed (``checksums.json``) and verified on load.

:func:`verify_all` recomputes every cell with the certified engine and
reports ``match`` / ``mismatch`` / ``undecided`` per cell (undecided only
when the precision cap is hit).  Row coordinates given as ranges may be
open-ended ("3.."); those are enumerated up to a window.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from ..errors import DataIntegrityError, PrecisionExhausted

#: environment variable overriding the table directory (used to point the
#: verifier at an alternative copy, e.g. in tests)
DATA_ENV = "PLURIBOUND_REFDATA_DIR"

TABLES = ("t1", "t2", "t3", "t4", "t5", "constants")

_TABLE_TITLES = {
    "t1": "plurigenus non-vanishing thresholds",
    "t2": "degree-l birationality thresholds (units 2^(1/3))",
    "t3": "fourth-map thresholds (units 2^(1/3))",
    "t4": "third-map thresholds (units 2^(1/3))",
    "t5": "second-map thresholds (units 2^(1/3))",
    "constants": "headline constants",
}


@dataclass(frozen=True, slots=True)
class RangeSpec:
    """Integer coordinate set: a point, "a..b", an open "a..", or "!=k"."""

    lo: Optional[int]
    hi: Optional[int]
    exclude: frozenset = frozenset()

    @classmethod
    def parse(cls, text: str) -> "RangeSpec":
        text = text.strip()
        if text.startswith("!="):
            return cls(lo=None, hi=None,
                       exclude=frozenset((int(text[2:]),)))
        if ".." in text:
            lo_s, _, hi_s = text.partition("..")
            lo, hi = int(lo_s), int(hi_s) if hi_s else None
            if hi is not None and hi < lo:
                raise ValueError(f"empty range {text!r}")
            return cls(lo=lo, hi=hi)
        k = int(text)
        return cls(lo=k, hi=k)

    def contains(self, x: int) -> bool:
        if x in self.exclude:
            return False
        if self.lo is not None and x < self.lo:
            return False
        if self.hi is not None and x > self.hi:
            return False
        return True

    def cells(self, window: int, *, base_lo: Optional[int] = None) -> Iterator[int]:
        """Concrete coordinates; open ends walk `window` values past the
        last constrained point (or past base_lo for pure exclusions)."""
        lo = self.lo if self.lo is not None else base_lo
        if lo is None:
            raise ValueError(f"open range {self} needs base_lo")
        hi = self.hi if self.hi is not None else lo + window
        return (x for x in range(lo, hi + 1) if x not in self.exclude)


def data_dir(source: Optional[str] = None) -> Path:
    if source is not None:
        return Path(source)
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent


def check_integrity(source: Optional[str] = None) -> None:
    """Compare every table file against checksums.json; raise on drift."""
    root = data_dir(source)
    sums_path = root / "checksums.json"
    try:
        recorded = json.loads(sums_path.read_text())
    except FileNotFoundError as exc:
        raise DataIntegrityError(f"missing {sums_path}") from exc
    for fname, want in sorted(recorded.items()):
        path = root / fname
        if not path.is_file():
            raise DataIntegrityError(f"missing reference table {path}")
        got = hashlib.sha256(path.read_bytes()).hexdigest()
        if got != want:
            raise DataIntegrityError(
                f"checksum mismatch for {fname}: recorded {want[:12]}..., "
                f"file has {got[:12]}...")


def load_table(name: str, *, source: Optional[str] = None,
               verify: bool = True) -> list:
    """Rows of one table as dicts with string values (specs unparsed)."""
    if name not in TABLES:
        raise KeyError(f"unknown table {name!r}; have {TABLES}")
    if verify:
        check_integrity(source)
    path = data_dir(source) / f"{name}.csv"
    if not path.is_file():
        raise DataIntegrityError(f"missing reference table {path}")
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# --------------------------------------------------------------------------
# verification against the engine
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class CellCheck:
    table: str
    where: str
    expected: str
    got: str
    status: str      # "match" | "mismatch" | "undecided"


@dataclass(frozen=True, slots=True)
class DiffReport:
    checks: tuple

    @property
    def counts(self) -> dict:
        out = {"match": 0, "mismatch": 0, "undecided": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        c = self.counts
        return c["mismatch"] == 0 and c["undecided"] == 0

    def problems(self) -> list:
        return [c for c in self.checks if c.status != "match"]

    def summary(self) -> str:
        c = self.counts
        lines = [f"verified {len(self.checks)} cells: {c['match']} match, "
                 f"{c['mismatch']} mismatch, {c['undecided']} undecided"]
        for p in self.problems():
            lines.append(f"  {p.status}: {p.table} {p.where}: "
                         f"table has {p.expected}, engine says {p.got}")
        return "\n".join(lines)


def _strict_txt(flag: bool) -> str:
    return "1" if flag else "0"


def _check_threshold(table: str, where: str, report, expected: int,
                     strict_txt: str, out: list) -> None:
    """Shared match rule: published values must agree exactly; strictness is
    compared only when the engine's value is the exact printed form (floor
    readings inherit the printed strictness)."""
    ok = report.published == expected
    if ok and report.published_exact and strict_txt != "":
        ok = _strict_txt(report.infimum.strict) == strict_txt
    got = f"{report.published}" + (" (exact form)" if report.published_exact
                                   else " (least lattice value)")
    out.append(CellCheck(table, where, str(expected), got,
                         "match" if ok else "mismatch"))


def _undecided(table: str, where: str, expected, exc, out: list) -> None:
    out.append(CellCheck(table, where, str(expected), f"undecided: {exc}",
                         "undecided"))


def verify_all(*, precision_cap: Optional[int] = None,
               tables: Optional[tuple] = None,
               source: Optional[str] = None,
               window: int = 60) -> DiffReport:
    """Recompute every stored cell and diff engine against tables."""
    from .. import higherdim, threefold   # deferred: keep import light

    check_integrity(source)
    wanted = tables if tables is not None else TABLES
    checks: list = []

    if "t1" in wanted:
        for row in load_table("t1", source=source, verify=False):
            value = int(row["value"])
            for g in RangeSpec.parse(row["g_spec"]).cells(window):
                for n in RangeSpec.parse(row["n_spec"]).cells(window):
                    expected = value if row["kind"] == "const" \
                        else value * (n + 1) - 3
                    where = f"g={g} n={n}"
                    try:
                        rep = threefold.nv_threshold(
                            g, n, precision_cap=precision_cap)
                    except PrecisionExhausted as exc:
                        _undecided("t1", where, expected, exc, checks)
                        continue
                    _check_threshold("t1", where, rep, expected,
                                     row["strict"], checks)

    if "t2" in wanted:
        for row in load_table("t2", source=source, verify=False):
            l, g = int(row["l"]), int(row["g"])
            expected = int(row["coeff"])
            where = f"l={l} g={g}"
            try:
                rep = threefold.bir_threshold(l, g,
                                              precision_cap=precision_cap)
            except PrecisionExhausted as exc:
                _undecided("t2", where, expected, exc, checks)
                continue
            mode_ok = (row["mode"] == "form") == rep.published_exact
            _check_threshold("t2", where, rep, expected, row["strict"],
                             checks)
            if not mode_ok and checks[-1].status == "match":
                checks[-1] = CellCheck("t2", where, f"{expected} "
                                       f"({row['mode']})", checks[-1].got,
                                       "mismatch")

    for tname, fn in (("t3", threefold.map4_threshold),
                      ("t4", threefold.map3_threshold),
                      ("t5", threefold.map2_threshold)):
        if tname not in wanted:
            continue
        for row in load_table(tname, source=source, verify=False):
            expected = int(row["coeff"])
            for g in RangeSpec.parse(row["g_spec"]).cells(window):
                where = f"g={g}"
                try:
                    rep = fn(g, precision_cap=precision_cap)
                except PrecisionExhausted as exc:
                    _undecided(tname, where, expected, exc, checks)
                    continue
                _check_threshold(tname, where, rep, expected, row["strict"],
                                 checks)

    if "constants" in wanted:
        for row in load_table("constants", source=source, verify=False):
            checks.extend(_verify_constant(row, threefold, higherdim,
                                           precision_cap, window))

    return DiffReport(tuple(checks))


def _verify_constant(row: dict, threefold, higherdim,
                     precision_cap: Optional[int], window: int) -> list:
    name = row["name"]
    params = {}
    for part in row["parameters" if "parameters" in row else "params"].split(";"):
        k, _, v = part.partition("=")
        params[k] = v
    expected = int(row["value"])
    out: list = []

    def spots(key: str) -> Iterator[int]:
        return RangeSpec.parse(params[key]).cells(window)

    try:
        if name == "nv-headline":
            g, n = int(params["g"]), int(params["n"])
            rep = threefold.nv_threshold(g, n, precision_cap=precision_cap)
            _check_threshold("constants", f"{name} g={g} n={n}", rep,
                             expected, row["strict"], out)
        elif name == "trican-threshold":
            for g in spots("g"):
                rep = threefold.trican_threshold(
                    g, precision_cap=precision_cap)
                _check_threshold("constants", f"{name} g={g}", rep,
                                 expected, row["strict"], out)
        elif name == "bir-all-l":
            for g in spots("g"):
                rep = threefold.all_l_threshold(
                    g, precision_cap=precision_cap).report
                _check_threshold("constants", f"{name} g={g}", rep,
                                 expected, row["strict"], out)
        elif name in ("map4-headline", "map3-headline", "map2-headline"):
            fn = {"map4-headline": threefold.map4_threshold,
                  "map3-headline": threefold.map3_threshold,
                  "map2-headline": threefold.map2_threshold}[name]
            g = int(params["g"])
            rep = fn(g, precision_cap=precision_cap)
            _check_threshold("constants", f"{name} g={g}", rep, expected,
                             row["strict"], out)
        elif name == "hd-nv-threshold":
            d, g = int(params["d"]), int(params["g"])
            rep = higherdim.nv_alpha_threshold(d, g=g,
                                               precision_cap=precision_cap)
            ok = rep.published == expected
            if ok and rep.published_exact and row["strict"] != "":
                ok = _strict_txt(rep.bound.strict) == row["strict"]
            out.append(CellCheck("constants", f"{name} d={d} g={g}",
                                 str(expected), str(rep.published),
                                 "match" if ok else "mismatch"))
        elif name == "hd-nv-multiplier":
            d, g = int(params["d"]), int(params["g"])
            alpha = int(params["alpha"])
            got = higherdim.nv_multiplier(alpha, d, g=g,
                                          precision_cap=precision_cap)
            out.append(CellCheck("constants",
                                 f"{name} d={d} g={g} alpha={alpha}",
                                 str(expected), str(got),
                                 "match" if got == expected else "mismatch"))
        elif name == "hd-bir-threshold":
            d, g = int(params["d"]), int(params["g"])
            rep = higherdim.bir_alpha_threshold(d, g=g,
                                                precision_cap=precision_cap)
            out.append(CellCheck("constants", f"{name} d={d} g={g}",
                                 str(expected), str(rep.published),
                                 "match" if rep.published == expected
                                 else "mismatch"))
        elif name == "hd-bir-lmin":
            d, g = int(params["d"]), int(params["g"])
            alpha = int(params["alpha"])
            got = higherdim.bir_l_min(alpha, d, g=g,
                                      precision_cap=precision_cap)
            out.append(CellCheck("constants",
                                 f"{name} d={d} g={g} alpha={alpha}",
                                 str(expected), str(got),
                                 "match" if got == expected else "mismatch"))
        else:
            out.append(CellCheck("constants", name, str(expected),
                                 "unknown constant name", "mismatch"))
    except PrecisionExhausted as exc:
        _undecided("constants", name, expected, exc, out)
    return out
