"""Bounded countermodel search, fixture confirmation, catalog runner.

A countermodel for an inference is a model satisfying every premise and
side condition while falsifying the conclusion.  The search enumerates all
models at the given bounds in canonical rank order and reports the least
hit; absence of a hit is evidence up to the bound, never a validity proof,
and the outcome wording keeps saying so.

Two independent evaluation routes are deliberately kept apart: the sweep
runs on the packed kernel, but any countermodel it reports is re-verified
statement by statement through the reference evaluator in `semantics`
before it reaches a report.  A disagreement raises SearchInvariantError
instead of producing output.

Determinism: the enumeration is partitioned into fixed chunks, each worker
returns its chunk-local least rank, and the reduction takes the global
minimum, so reports are identical for any thread count.  `models_checked`
follows the same convention: the full count when nothing was found, and
least rank + 1 (the models a sequential scan would have visited) when a
countermodel exists.  Wall-clock time stays out of the JSON payload.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import kernel, semantics
from .catalog import (
    MOODS,
    CatalogEntry,
    Inference,
    apply_letter_map,
    entries_in_scope,
    entry_json,
    fixture,
    instantiate,
)
from .model_core import (
    ALL_SUBSETS,
    DEFAULT_MAX_MODELS,
    BoundsTooLarge,
    EnumerationBounds,
    Model,
    model_at_rank,
    model_count,
)
from .semantics import DiagramExpr, Term

ENGINE_VERSION = "0.1.0"

NO_COUNTERMODEL = "NoCountermodelUpToBound"
COUNTERMODEL_FOUND = "CountermodelFound"
FIXTURE_CONFIRMED = "FixtureConfirmed"


class SearchInvariantError(RuntimeError):
    """The sweep and the reference evaluator disagreed, or a fixture lied."""


@dataclass(frozen=True)
class CheckReport:
    inference: str
    bounds: EnumerationBounds
    models_checked: int
    outcome: str
    countermodel: Model | None
    fixture: str | None = None
    elapsed: float = 0.0
    engine_version: str = ENGINE_VERSION

    def to_dict(self) -> dict:
        """The stable report payload; timing and version stay in memory."""
        return {
            "inference": self.inference,
            "bounds": bounds_dict(self.bounds),
            "models_checked": self.models_checked,
            "outcome": self.outcome,
            "countermodel": model_dict(self.countermodel),
        }


def bounds_dict(b: EnumerationBounds) -> dict:
    return {
        "t_count": b.t_count,
        "world_sizes": list(b.world_sizes),
        "concepts": list(b.concept_names),
        "policy": b.individual_policy,
    }


def model_dict(model: Model | None) -> dict | None:
    if model is None:
        return None
    return {
        "t_count": model.t_count,
        "world_sizes": list(model.world_sizes),
        "individuals": [list(ind) for ind in model.individuals],
        "concepts": {
            name: [sorted(ext) for ext in model.extents(name)]
            for name in sorted(model.concepts)
        },
    }


def _requirements(inf: Inference, extra_requirements=()) -> list:
    reqs = [(("stmt", p), True) for p in inf.premises]
    reqs += [(("nonempty", c), True) for c in inf.side_conditions]
    reqs.append((("stmt", inf.conclusion), False))
    reqs.extend(extra_requirements)
    return reqs


def _requirement_true(model: Model, item) -> bool:
    kind = item[0]
    if kind == "stmt":
        return semantics.holds(model, item[1])
    if kind == "nonempty":
        return semantics.realized_nonempty(model, item[1])
    if kind == "strong_i":
        return semantics.exists_necessarily_both(model, item[1], item[2])
    raise ValueError(f"unknown requirement kind {kind!r}")


def _reverify(model: Model, checks) -> None:
    """Re-evaluate every requirement through the reference evaluator."""
    for item, want in checks:
        if _requirement_true(model, item) != want:
            raise SearchInvariantError(
                f"sweep result fails independent re-evaluation on {item!r}"
            )


def _search_least(
    b: EnumerationBounds,
    checks,
    threads: int,
    max_models: int,
    backend: str | None,
) -> tuple[int | None, int]:
    """(least qualifying rank or None, total model count)."""
    total = model_count(b)
    if total > max_models:
        raise BoundsTooLarge(
            f"{total} models at these bounds exceeds the limit {max_models}"
        )
    compiled = kernel.compile_checks(checks, kernel.concept_order(b))
    if threads <= 1:
        return kernel.sweep(b, compiled, 0, total, backend=backend), total

    n_chunks = max(1, min(64, total))
    step = -(-total // n_chunks)
    spans = [(s, min(s + step, total)) for s in range(0, total, step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(
            pool.map(lambda span: kernel.sweep(b, compiled, span[0], span[1], backend=backend), spans)
        )
    found = [r for r in results if r is not None]
    return (min(found) if found else None), total


def find_countermodel(
    inf: Inference,
    b: EnumerationBounds,
    threads: int = 1,
    max_models: int = DEFAULT_MAX_MODELS,
    extra_requirements=(),
    backend: str | None = None,
) -> Model | None:
    """Canonical-least model meeting premises and side conditions but not
    the conclusion, or None if no model at the bounds does."""
    checks = _requirements(inf, extra_requirements)
    found, _total = _search_least(b, checks, threads, max_models, backend)
    if found is None:
        return None
    model = model_at_rank(b, found)
    _reverify(model, checks)
    return model


def verify_up_to(
    inf: Inference,
    b: EnumerationBounds,
    threads: int = 1,
    max_models: int = DEFAULT_MAX_MODELS,
    extra_requirements=(),
    backend: str | None = None,
) -> CheckReport:
    checks = _requirements(inf, extra_requirements)
    t0 = time.perf_counter()
    found, total = _search_least(b, checks, threads, max_models, backend)
    elapsed = time.perf_counter() - t0
    if found is None:
        return CheckReport(inf.label, b, total, NO_COUNTERMODEL, None, elapsed=elapsed)
    model = model_at_rank(b, found)
    _reverify(model, checks)
    return CheckReport(
        inf.label, b, found + 1, COUNTERMODEL_FOUND, model, elapsed=elapsed
    )


# --- fixtures -------------------------------------------------------------


def _fixture_extra_failures(entry: CatalogEntry, model: Model) -> list[str]:
    """The stronger per-fixture remarks, checked verbatim."""
    out = []
    if entry.label == "Baroco NX":
        # even the clearance claim without the not-B conjunct must fail:
        # no C individual is necessarily distinct from every necessarily-B one
        def clear(y) -> bool:
            return all(
                semantics.n_distinct(x, y)
                for x in model.individuals
                if semantics.nec(model, Term("B"), x)
            )

        if any(
            semantics.now(model, Term("C"), y) and clear(y) for y in model.individuals
        ):
            out.append("clearance claim holds but the fixture must falsify it")
    if entry.label == "Baroco XN":
        if semantics.diagram_expr(model, DiagramExpr(4, Term("C"), Term("B"))):
            out.append("diagram expression (4) holds but the fixture must falsify it")
        if not semantics.diagram_expr(model, DiagramExpr(5, Term("C"), Term("B"))):
            out.append("diagram expression (5), the recorded partial conclusion, fails")
    return out


def confirm_fixture(entry: CatalogEntry) -> CheckReport:
    """Evaluate an invalid entry on its fixture through the reference
    evaluator: premises and side conditions must hold, the conclusion must
    fail, plus the entry's stronger remarks.  A failure is a catalog
    defect and raises SearchInvariantError."""
    if entry.fixture is None:
        raise ValueError(f"{entry.label} carries no fixture")
    fx = fixture(entry.fixture)
    inf = apply_letter_map(
        instantiate(MOODS[entry.mood], entry.pattern), entry.letter_map
    )
    failures = []
    for premise in inf.premises:
        if not semantics.holds(fx.model, premise):
            failures.append(f"premise {premise} fails")
    for concept in inf.side_conditions:
        if not semantics.realized_nonempty(fx.model, concept):
            failures.append(f"side condition NonEmpty({concept}) fails")
    if semantics.holds(fx.model, inf.conclusion):
        failures.append(f"conclusion {inf.conclusion} holds")
    failures += _fixture_extra_failures(entry, fx.model)
    if failures:
        raise SearchInvariantError(
            f"fixture {entry.fixture} does not refute {entry.label}: "
            + "; ".join(failures)
        )
    b = EnumerationBounds(
        fx.model.t_count,
        fx.model.world_sizes,
        tuple(sorted(fx.model.concepts)),
        ALL_SUBSETS,
    )
    return CheckReport(
        inf.label, b, 1, FIXTURE_CONFIRMED, fx.model, fixture=entry.fixture
    )


# --- catalog runner -------------------------------------------------------


@dataclass(frozen=True)
class CatalogRun:
    scope: str
    bounds: EnumerationBounds
    reports: tuple[CheckReport, ...]
    entry_results: tuple[dict, ...]
    divergences: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "bounds": bounds_dict(self.bounds),
            "entries": list(self.entry_results),
            "reports": [r.to_dict() for r in self.reports],
            "divergences": list(self.divergences),
        }

    def to_json_bytes(self) -> bytes:
        return (json.dumps(self.to_dict(), indent=2) + "\n").encode()


def run_catalog(
    b: EnumerationBounds,
    scope: str = "all",
    threads: int = 1,
    max_models: int = DEFAULT_MAX_MODELS,
) -> CatalogRun:
    """Check every catalog entry in scope at the bounds.

    Entries graded valid must come back NoCountermodelUpToBound, entries
    graded invalid must come back CountermodelFound and additionally have
    their fixture confirmed; the unasserted entry is compared against its
    recorded engine verdict only.  Any mismatch lands in `divergences`.
    """
    reports: list[CheckReport] = []
    entry_results: list[dict] = []
    divergences: list[str] = []
    for entry in entries_in_scope(scope):
        inf = instantiate(MOODS[entry.mood], entry.pattern)
        report = verify_up_to(inf, b, threads=threads, max_models=max_models)
        reports.append(report)
        engine_result = (
            "Valid" if report.outcome == NO_COUNTERMODEL else "Invalid"
        )
        entry_results.append(entry_json(entry, engine_result))
        if engine_result != entry.engine:
            divergences.append(
                f"{entry.label}: engine found {report.outcome}, "
                f"cataloged as {entry.verdict} (engine expectation {entry.engine})"
            )
        if entry.fixture is not None:
            reports.append(confirm_fixture(entry))
    return CatalogRun(
        scope, b, tuple(reports), tuple(entry_results), tuple(divergences)
    )
