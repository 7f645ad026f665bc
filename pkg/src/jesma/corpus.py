"""Corpus fixtures: the catalogue of known solution sets, re-run as a
regression harness.

Each entry names an equation instance (by family + parameters or by
explicit bases), bounds, and the expected solution set; running an entry
searches the instance and diffs the result.  Expected solutions are
re-verified by exact substitution when the file is loaded, so the corpus
cannot silently drift.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from .search import (
    find_eisenstein_solutions,
    find_solutions,
    find_solutions_scaled,
    find_terai_solutions,
)
from .triples import Triple, fermat_family, jesmanowicz_family, lu_family, primitive_from_pq

__all__ = ["CorpusEntry", "CorpusError", "load_corpus", "load_default_corpus", "run_corpus", "run_entry"]

_FAMILIES = {
    "jesmanowicz": jesmanowicz_family,
    "lu": lu_family,
    "fermat": fermat_family,
}


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    form: str  # pythag | general | terai | eisenstein
    expected: frozenset[tuple[int, ...]]
    note: str = ""
    triple: Triple | None = None
    bases: tuple[int, ...] = ()
    ks: tuple[int, ...] = (1,)
    x_max: int = 30
    y_max: int = 30

    def instances(self):
        if self.form == "pythag":
            for k in self.ks:
                yield k
        else:
            yield 1


def _parse_entry(obj: dict, index: int) -> CorpusEntry:
    where = f"entry[{index}]" + (f" id={obj.get('id')!r}" if isinstance(obj, dict) else "")
    if not isinstance(obj, dict):
        raise CorpusError(f"{where}: entry must be an object")
    try:
        form = obj["form"]
        expected = frozenset(tuple(int(a) for a in sol) for sol in obj.get("expected", []))
        x_max = int(obj.get("x_max", "30"))
        y_max = int(obj.get("y_max", "30"))
        triple = None
        bases: tuple[int, ...] = ()
        ks: tuple[int, ...] = (1,)
        if form == "pythag":
            if "family" in obj:
                family = obj["family"]
                if family == "pq":
                    triple = primitive_from_pq(int(obj["p"]), int(obj["q"]))
                elif family in _FAMILIES:
                    triple = _FAMILIES[family](int(obj["n"]))
                else:
                    raise CorpusError(f"{where}: unknown family {family!r}")
                if obj.get("swap_legs"):
                    triple = triple.swapped()
            else:
                u, v, w = (int(a) for a in obj["triple"])
                triple = Triple(u, v, w)
            if "k_range" in obj:
                lo, hi = (int(a) for a in obj["k_range"])
                ks = tuple(range(lo, hi + 1))
            else:
                ks = (int(obj.get("k", "1")),)
        elif form in ("general", "eisenstein"):
            bases = tuple(int(a) for a in obj["bases"])
            if len(bases) != 3:
                raise CorpusError(f"{where}: need three bases")
        elif form == "terai":
            bases = (int(obj["b"]), int(obj["c"]))
            x_max = int(obj.get("m_max", "10"))
            y_max = int(obj.get("n_max", "10"))
        else:
            raise CorpusError(f"{where}: unknown form {form!r}")
        entry = CorpusEntry(
            id=obj.get("id", f"entry-{index}"),
            form=form,
            expected=expected,
            note=obj.get("note", ""),
            triple=triple,
            bases=bases,
            ks=ks,
            x_max=x_max,
            y_max=y_max,
        )
    except CorpusError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise CorpusError(f"{where}: {e}")
    _check_expected(entry, where)
    return entry


def _check_expected(entry: CorpusEntry, where: str) -> None:
    for sol in entry.expected:
        if entry.form == "pythag":
            x, y, z = sol
            t = entry.triple
            for k in entry.ks[:1]:
                if (k * t.u) ** x + (k * t.v) ** y != (k * t.w) ** z:
                    raise CorpusError(f"{where}: expected solution {sol} fails substitution")
        elif entry.form == "general":
            a, b, c = entry.bases
            x, y, z = sol
            if a**x + b**y != c**z:
                raise CorpusError(f"{where}: expected solution {sol} fails substitution")
        elif entry.form == "terai":
            b, c = entry.bases
            x, m, n = sol
            if x * x + b**m != c**n:
                raise CorpusError(f"{where}: expected solution {sol} fails substitution")
        elif entry.form == "eisenstein":
            a, b, c = entry.bases
            x, y, z = sol
            if a ** (2 * x) + a**x * b**y + b ** (2 * y) != c**z:
                raise CorpusError(f"{where}: expected solution {sol} fails substitution")


def load_corpus(text: str) -> tuple[list[CorpusEntry], list[str]]:
    """Parse a corpus file; malformed entries become diagnostics, the rest load."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CorpusError(f"corpus file is not valid JSON: {e}")
    if not isinstance(data, list):
        raise CorpusError("corpus file must hold a JSON array")
    entries: list[CorpusEntry] = []
    problems: list[str] = []
    for i, obj in enumerate(data):
        try:
            entries.append(_parse_entry(obj, i))
        except CorpusError as e:
            problems.append(str(e))
    return entries, problems


def load_default_corpus() -> tuple[list[CorpusEntry], list[str]]:
    text = resources.files("jesma.data").joinpath("corpus.json").read_text()
    return load_corpus(text)


@dataclass(frozen=True)
class EntryResult:
    entry_id: str
    passed: bool
    detail: str
    elapsed: float = field(compare=False, default=0.0)


def run_entry(entry: CorpusEntry) -> EntryResult:
    start = time.perf_counter()
    mismatches: list[str] = []
    if entry.form == "pythag":
        for k in entry.ks:
            report = find_solutions_scaled(entry.triple, k, entry.x_max, entry.y_max)
            found = report.solution_set()
            if found != entry.expected:
                mismatches.append(f"k={k}: found {sorted(found)} expected {sorted(entry.expected)}")
    elif entry.form == "general":
        a, b, c = entry.bases
        found = find_solutions(a, b, c, entry.x_max, entry.y_max).solution_set()
        if found != entry.expected:
            mismatches.append(f"found {sorted(found)} expected {sorted(entry.expected)}")
    elif entry.form == "terai":
        b, c = entry.bases
        found = find_terai_solutions(b, c, entry.x_max, entry.y_max)
        if found != entry.expected:
            mismatches.append(f"found {sorted(found)} expected {sorted(entry.expected)}")
    elif entry.form == "eisenstein":
        a, b, c = entry.bases
        found = find_eisenstein_solutions(a, b, c, entry.x_max, entry.y_max)
        if found != entry.expected:
            mismatches.append(f"found {sorted(found)} expected {sorted(entry.expected)}")
    elapsed = time.perf_counter() - start
    if mismatches:
        return EntryResult(entry.id, False, "; ".join(mismatches), elapsed)
    return EntryResult(entry.id, True, "", elapsed)


def run_corpus(entries: list[CorpusEntry], threads: int = 1) -> list[EntryResult]:
    if threads > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run_entry, entries))
    return [run_entry(e) for e in entries]
