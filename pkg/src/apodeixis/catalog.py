"""The syllogistic catalog: moods, modal patterns, verdicts, fixtures.

Fourteen moods over the first three figures, instantiated with modality
patterns.  A three-letter pattern (premise, premise, conclusion) asserts
its conclusion; a two-letter pattern claims that the strengthened
conclusion does not follow and is to be refuted by countermodel.  The
mixed necessity/assertoric table partitions into exactly thirteen entries
graded valid and fifteen graded invalid, each invalid one backed by one of
five countermodels (several are shared, under documented letter
permutations).  The contingency entries record, per mood, which reading of
"contingent"/"possible" each premise and conclusion uses, since the
surface letters K and M underdetermine that.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model_core import Model, make_model
from .semantics import Statement, Term

VALID = "ValidPerPaper"
INVALID = "InvalidPerPaper"
UNASSERTED = "UnassertedPerPaper"

#: premise/conclusion term letters (subject, predicate) per figure; the
#: first premise is the one containing the conclusion's predicate
_FIGURE_TERMS = {
    1: (("B", "A"), ("C", "B"), ("C", "A")),
    2: (("B", "A"), ("C", "A"), ("C", "B")),
    3: (("C", "A"), ("C", "B"), ("B", "A")),
}


@dataclass(frozen=True)
class Mood:
    name: str
    figure: int
    relations: tuple[str, str, str]

    def schema(self) -> tuple[tuple[str, str, str], ...]:
        """((subject, predicate, relation) for premise 1, premise 2, conclusion)."""
        return tuple(
            (s, p, r) for (s, p), r in zip(_FIGURE_TERMS[self.figure], self.relations)
        )


_MOOD_DEFS = (
    ("Barbara", 1, "aaa"),
    ("Celarent", 1, "eae"),
    ("Darii", 1, "aii"),
    ("Ferio", 1, "eio"),
    ("Cesare", 2, "eae"),
    ("Camestres", 2, "aee"),
    ("Festino", 2, "eio"),
    ("Baroco", 2, "aoo"),
    ("Darapti", 3, "aai"),
    ("Felapton", 3, "eao"),
    ("Datisi", 3, "aii"),
    ("Disamis", 3, "iai"),
    ("Ferison", 3, "eio"),
    ("Bocardo", 3, "oao"),
)

MOODS: dict[str, Mood] = {
    name: Mood(name, figure, tuple(rels)) for name, figure, rels in _MOOD_DEFS
}

#: existential-import side conditions: these moods draw a particular
#: conclusion from universal premises, so the subject-for-C premises only
#: carry weight if some individual realizes C at the real parameter
_SIDE_CONDITIONS = {"Darapti": ("C",), "Felapton": ("C",)}


@dataclass(frozen=True)
class ModalPattern:
    premise_tags: tuple[str, str]
    conclusion_tag: str | None = None  # None claims "no necessity conclusion"

    @property
    def text(self) -> str:
        return "".join(self.premise_tags) + (self.conclusion_tag or "")

    @property
    def asserts_conclusion(self) -> bool:
        return self.conclusion_tag is not None


@dataclass(frozen=True)
class Inference:
    label: str
    premises: tuple[Statement, ...]
    side_conditions: tuple[str, ...]
    conclusion: Statement


# (mood name, premise tags, conclusion tag) -> (modality, relation) per
# slot.  These pin which contingency/possibility reading each slot uses;
# the pattern letters alone cannot express that.
_CONTINGENCY_READINGS = {
    ("Barbara", ("K", "K"), "K"): (("Kamp", "a"), ("Kamp", "a"), ("Kamp", "a")),
    ("Barbara", ("K", "X"), "K"): (("Ktwo", "a"), ("X", "a"), ("Ktwo", "a")),
    ("Celarent", ("K", "X"), "K"): (("Ktwo", "e"), ("X", "a"), ("Ktwo", "e")),
    ("Barbara", ("X", "K"), "M"): (("X", "a"), ("Ktwo", "a"), ("Ma2", "a")),
    ("Celarent", ("N", "K"), "X"): (("N", "e"), ("Ktwo", "a"), ("X", "e")),
    ("Celarent", ("X", "K"), "M"): (("X", "e"), ("Ktwo", "a"), ("Mo2", "a")),
    ("Camestres", ("X", "K"), None): (("X", "a"), ("Ktwo", "e"), ("Mo3", "a")),
    ("Cesare", ("K", "N"), None): (("Ktwo", "e"), ("N", "a"), ("X", "e")),
    ("Camestres", ("N", "K"), "M"): (("N", "a"), ("Ktwo", "e"), ("Mo2", "a")),
}


def instantiate(mood: Mood, pattern: ModalPattern) -> Inference:
    """Build the quantified premises, side conditions and conclusion.

    Mixed necessity/assertoric patterns are schematic: any tags from
    {N, X} work, and a missing conclusion tag targets the necessity
    conclusion.  Contingency patterns exist only for the cataloged
    mood/pattern combinations.
    """
    label = f"{mood.name} {pattern.text}"
    schema = mood.schema()
    key = (mood.name, pattern.premise_tags, pattern.conclusion_tag)
    if key in _CONTINGENCY_READINGS:
        slots = _CONTINGENCY_READINGS[key]
        stmts = [
            Statement(rel, modality, Term(s), Term(p))
            for (modality, rel), (s, p, _r) in zip(slots, schema)
        ]
    elif all(tag in ("N", "X") for tag in pattern.premise_tags) and pattern.conclusion_tag in (
        None,
        "N",
        "X",
    ):
        tags = (*pattern.premise_tags, pattern.conclusion_tag or "N")
        stmts = [
            Statement(rel, tag, Term(s), Term(p))
            for tag, (s, p, rel) in zip(tags, schema)
        ]
    else:
        raise KeyError(f"unknown mood/pattern combination {label!r}")
    return Inference(label, tuple(stmts[:2]), _SIDE_CONDITIONS.get(mood.name, ()), stmts[2])


# --- fixtures -------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    name: str
    model: Model
    #: (parameter, world element) -> label used in prose output
    labels: dict[tuple[int, int], str]
    #: labels of the catalog entries this model refutes
    refutes: tuple[str, ...]
    note: str


_TWO_ONE_LABELS = {(0, 0): "x0", (0, 1): "y0", (1, 0): "x1"}

_FIXTURES = {
    "barbara_xn": Fixture(
        "barbara_xn",
        make_model((1, 1), [(0, 0)], {"A": [{0}, ()], "B": [{0}, {0}], "C": [{0}, ()]}),
        {(0, 0): "x0", (1, 0): "x1"},
        ("Barbara XN", "Darii XN", "Datisi XN", "Disamis NX"),
        "single individual that is necessarily B but only actually A and C",
    ),
    "celarent_xn": Fixture(
        "celarent_xn",
        make_model(
            (2, 1),
            [(0, 0), (1, 0)],
            {"A": [{1}, {0}], "B": [{0}, {0}], "C": [{0}, {0}]},
        ),
        _TWO_ONE_LABELS,
        (
            "Celarent XN",
            "Ferio XN",
            "Cesare XN",
            "Festino XN",
            "Camestres NX",
            "Felapton XN",
            "Ferison XN",
            "Bocardo XN",
        ),
        "the B-and-C individual meets the A individual at parameter 1",
    ),
    "baroco_nx": Fixture(
        "baroco_nx",
        make_model(
            (2, 1),
            [(0, 0), (1, 0)],
            {"A": [{0}, {0}], "B": [{0}, {0}], "C": [{1}, {0}]},
        ),
        _TWO_ONE_LABELS,
        ("Baroco NX",),
        "the C individual is never clear of the necessarily-B individual",
    ),
    "baroco_xn": Fixture(
        "baroco_xn",
        make_model(
            (2, 1),
            [(0, 0), (1, 0)],
            {"A": [{0}, ()], "B": [{0}, {0}], "C": [{1}, {0}]},
        ),
        _TWO_ONE_LABELS,
        ("Baroco XN",),
        "necessity premise holds vacuously since nothing is necessarily A",
    ),
    "bocardo_nx": Fixture(
        "bocardo_nx",
        make_model(
            (2, 1),
            [(0, 0), (1, 0)],
            {"A": [{1}, ()], "B": [{0}, ()], "C": [{0}, {0}]},
        ),
        _TWO_ONE_LABELS,
        ("Bocardo NX",),
        "necessary-o premise holds via its clause (3), nothing is necessarily A",
    ),
}

FIXTURE_NAMES = tuple(sorted(_FIXTURES))


def fixture(name: str) -> Fixture:
    try:
        return _FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}") from None


def fixtures() -> tuple[Fixture, ...]:
    return tuple(_FIXTURES[name] for name in FIXTURE_NAMES)


# --- verdict table --------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    mood: str
    pattern: ModalPattern
    verdict: str
    engine: str  # "Valid" (no countermodel expected) or "Invalid"
    fixture: str | None = None
    #: term substitution applied to the inference before evaluating it on
    #: the (shared) fixture model, e.g. (("A","B"),("B","A")) swaps A and B
    letter_map: tuple[tuple[str, str], ...] | None = None
    reading: str = ""
    locus: str = ""
    partial_conclusion: str | None = None

    @property
    def label(self) -> str:
        return f"{self.mood} {self.pattern.text}"


def _assert3(tags: str) -> ModalPattern:
    return ModalPattern((tags[0], tags[1]), tags[2])


def _refute2(tags: str) -> ModalPattern:
    return ModalPattern((tags[0], tags[1]), None)


_SWAP_AB = (("A", "B"), ("B", "A"))
_SWAP_BC = (("B", "C"), ("C", "B"))
_CYCLE = (("A", "B"), ("B", "C"), ("C", "A"))

#: per mood: (valid mixed pattern or None-pairs, invalid mixed pattern,
#: fixture, letter map); Baroco and Bocardo have no valid mixed pattern
_MIXED = (
    ("Barbara", "NXN", "XN", "barbara_xn", None),
    ("Celarent", "NXN", "XN", "celarent_xn", None),
    ("Darii", "NXN", "XN", "barbara_xn", None),
    ("Ferio", "NXN", "XN", "celarent_xn", None),
    ("Cesare", "NXN", "XN", "celarent_xn", _SWAP_AB),
    ("Camestres", "XNN", "NX", "celarent_xn", _CYCLE),
    ("Festino", "NXN", "XN", "celarent_xn", _SWAP_AB),
    ("Baroco", None, ("NX", "XN"), None, None),
    ("Darapti", ("NXN", "XNN"), None, None, None),
    ("Felapton", "NXN", "XN", "celarent_xn", None),
    ("Datisi", "NXN", "XN", "barbara_xn", _SWAP_BC),
    ("Disamis", "XNN", "NX", "barbara_xn", _SWAP_BC),
    ("Ferison", "NXN", "XN", "celarent_xn", None),
    ("Bocardo", None, ("NX", "XN"), None, None),
)

_FIGURE_LOCUS = {1: "An. pr. A 9", 2: "An. pr. A 10", 3: "An. pr. A 11"}


def _nnn_entries() -> list[CatalogEntry]:
    out = []
    for name, _figure, _rels in _MOOD_DEFS:
        locus = "An. pr. A 8"
        if name in ("Baroco", "Bocardo"):
            locus += ", 30a6ff"
        out.append(CatalogEntry(name, _assert3("NNN"), VALID, "Valid", locus=locus))
    return out


def _mixed_entries() -> list[CatalogEntry]:
    out = []
    for name, valid, invalid, fixture_name, letter_map in _MIXED:
        figure = MOODS[name].figure
        locus = _FIGURE_LOCUS[figure]
        if isinstance(valid, tuple):  # Darapti: both directions valid
            for tags in valid:
                out.append(CatalogEntry(name, _assert3(tags), VALID, "Valid", locus=locus))
            continue
        if valid is not None:
            out.append(CatalogEntry(name, _assert3(valid), VALID, "Valid", locus=locus))
        if isinstance(invalid, tuple):  # Baroco/Bocardo: both directions invalid
            for tags in invalid:
                fx = f"{name.lower()}_{tags.lower()}"
                entry_locus = locus
                partial = None
                if name == "Baroco" and tags == "XN":
                    partial = (
                        "only the weaker diagram expression (5) follows: "
                        "some necessarily-C individual is not B"
                    )
                if name == "Bocardo" and tags == "XN":
                    fx, map_ = "celarent_xn", None
                else:
                    map_ = None
                if fx not in _FIXTURES:
                    raise AssertionError(f"missing fixture {fx}")
                out.append(
                    CatalogEntry(
                        name,
                        _refute2(tags),
                        INVALID,
                        "Invalid",
                        fixture=fx,
                        letter_map=map_,
                        locus=entry_locus,
                        partial_conclusion=partial,
                    )
                )
            continue
        extra = ""
        if name == "Barbara":
            extra = ", 30a25ff"
        if name == "Camestres":
            extra = ", 30b24ff"
        out.append(
            CatalogEntry(
                name,
                _refute2(invalid),
                INVALID,
                "Invalid",
                fixture=fixture_name,
                letter_map=letter_map,
                locus=locus + extra,
            )
        )
    return out


def _contingency_entries() -> list[CatalogEntry]:
    k2 = "two-sided K on the premise subjects"
    return [
        CatalogEntry(
            "Barbara", _assert3("KKK"), VALID, "Valid",
            reading="ampliated contingency (Kamp) in all three statements",
            locus="An. pr. A 14",
        ),
        CatalogEntry(
            "Barbara", _assert3("KXK"), VALID, "Valid",
            reading=k2, locus="An. pr. A 15",
        ),
        CatalogEntry(
            "Celarent", _assert3("KXK"), VALID, "Valid",
            reading=k2 + "; the e-form of K coincides with its a-form",
            locus="An. pr. A 15",
        ),
        CatalogEntry(
            "Barbara", _assert3("XKM"), VALID, "Valid",
            reading="conclusion is possible-a in the sense of candidate (2)",
            locus="An. pr. A 15",
        ),
        CatalogEntry(
            "Celarent", _assert3("NKX"), VALID, "Valid",
            reading="assertoric conclusion from a necessary and a contingent premise",
            locus="An. pr. A 16",
        ),
        CatalogEntry(
            "Celarent", _assert3("XKM"), VALID, "Valid",
            reading="conclusion is possible-not in the sense of candidate (2)",
            locus="An. pr. A 15",
        ),
        CatalogEntry(
            "Camestres", _refute2("XK"), INVALID, "Invalid",
            reading="refuted target: possible-not conclusion in the sense of candidate (3)",
            locus="An. pr. A 18",
        ),
        CatalogEntry(
            "Cesare", _refute2("KN"), INVALID, "Invalid",
            reading="refuted target: the assertoric e-conclusion",
            locus="An. pr. A 19",
        ),
        CatalogEntry(
            "Camestres", _assert3("NKM"), UNASSERTED, "Valid",
            reading="possible-not conclusion in the sense of candidate (2); "
            "drawn by the engine, asserted nowhere in An. pr.",
            locus="An. pr. A 19",
        ),
    ]


def verdict_table() -> tuple[CatalogEntry, ...]:
    return tuple(_nnn_entries() + _mixed_entries() + _contingency_entries())


def entries_in_scope(scope: str) -> tuple[CatalogEntry, ...]:
    table = verdict_table()
    if scope == "all":
        return table
    if scope == "nnn":
        return tuple(e for e in table if e.pattern.text == "NNN")
    if scope == "mixed":
        return tuple(
            e
            for e in table
            if e.pattern.text != "NNN"
            and all(t in ("N", "X") for t in e.pattern.premise_tags)
            and e.pattern.conclusion_tag in (None, "N", "X")
        )
    if scope == "contingency":
        mixed = set(entries_in_scope("mixed")) | set(entries_in_scope("nnn"))
        return tuple(e for e in table if e not in mixed)
    raise ValueError(f"unknown scope {scope!r}")


def find_entry(mood: Mood, pattern: ModalPattern) -> CatalogEntry | None:
    for e in verdict_table():
        if e.mood == mood.name and e.pattern == pattern:
            return e
    return None


def apply_letter_map(inf: Inference, letter_map) -> Inference:
    """Substitute term letters, e.g. to evaluate an entry on a shared fixture."""
    if not letter_map:
        return inf
    mapping = dict(letter_map)

    def sub(stmt: Statement) -> Statement:
        return Statement(
            stmt.relation,
            stmt.modality,
            Term(mapping.get(stmt.subject.base, stmt.subject.base), stmt.subject.complemented),
            Term(
                mapping.get(stmt.predicate.base, stmt.predicate.base),
                stmt.predicate.complemented,
            ),
        )

    return Inference(
        inf.label,
        tuple(sub(s) for s in inf.premises),
        tuple(mapping.get(c, c) for c in inf.side_conditions),
        sub(inf.conclusion),
    )


def entry_json(entry: CatalogEntry, engine_result: str | None = None) -> dict:
    return {
        "mood": entry.mood,
        "pattern": entry.pattern.text,
        "verdict": entry.verdict,
        "engine_result": engine_result,
        "fixture": entry.fixture,
        "locus": entry.locus,
    }
