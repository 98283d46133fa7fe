"""Surface syntax: statements, mood/pattern names, model files.

Statement grammar (exact):

    stmt := [mod "("] term rel term [")"]
    mod  := "N" | "Kamp" | "K" | "Ma2" | "Mo2" | "Mo3"
    rel  := "a" | "e" | "i" | "o"
    term := ["~"] letter          (letter: one ASCII uppercase)

An unmodified statement is assertoric. "K" is the two-sided contingency;
the ampliated reading must be spelled "Kamp". "~" complements a term
(the per-parameter set complement); "¬" is accepted as an input alias.
Offsets in error spans are byte offsets into the input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import model_core
from .model_core import Model
from .semantics import Statement, Term


@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} (at {span.begin}..{span.end})")
        self.message = message
        self.span = span


# surface spelling per modality; longest first so "K" never shadows "Kamp"
_MODS = (("Kamp", "Kamp"), ("Ma2", "Ma2"), ("Mo2", "Mo2"), ("Mo3", "Mo3"), ("N", "N"), ("K", "Ktwo"))
_SURFACE = {"N": "N", "Ktwo": "K", "Kamp": "Kamp", "Ma2": "Ma2", "Mo2": "Mo2", "Mo3": "Mo3"}
_NOT_SIGN = "¬".encode()


def parse_statement(text: str) -> Statement:
    raw = text.encode()
    pos = 0
    end = len(raw)
    while pos < end and raw[pos : pos + 1].isspace():
        pos += 1
    while end > pos and raw[end - 1 : end].isspace():
        end -= 1
    if pos == end:
        raise ParseError("empty statement", SourceSpan(pos, end))

    modality = "X"
    closing = False
    for surface, name in _MODS:
        token = surface.encode()
        if raw.startswith(token + b"(", pos):
            modality = name
            pos += len(token) + 1
            closing = True
            break

    def term(at: int) -> tuple[Term, int]:
        complemented = False
        if raw.startswith(b"~", at):
            complemented = True
            at += 1
        elif raw.startswith(_NOT_SIGN, at):
            complemented = True
            at += len(_NOT_SIGN)
        ch = raw[at : at + 1]
        if not (b"A" <= ch <= b"Z"):
            raise ParseError("expected a concept letter A..Z", SourceSpan(at, min(at + 1, end)))
        return Term(ch.decode(), complemented), at + 1

    subject, pos = term(pos)
    rel_at = pos
    rel = raw[pos : pos + 1]
    if rel not in (b"a", b"e", b"i", b"o"):
        raise ParseError("expected a relation letter a/e/i/o", SourceSpan(pos, min(pos + 1, end)))
    pos += 1
    predicate, pos = term(pos)
    if closing:
        if not raw.startswith(b")", pos):
            raise ParseError("expected ')'", SourceSpan(pos, min(pos + 1, end)))
        pos += 1
    if pos != end:
        raise ParseError("trailing input after statement", SourceSpan(pos, end))
    try:
        return Statement(rel.decode(), modality, subject, predicate)
    except ValueError as exc:
        raise ParseError(str(exc), SourceSpan(rel_at, rel_at + 1)) from None


def print_statement(s: Statement) -> str:
    body = _term_text(s.subject) + s.relation + _term_text(s.predicate)
    if s.modality == "X":
        return body
    return f"{_SURFACE[s.modality]}({body})"


def _term_text(t: Term) -> str:
    return ("~" if t.complemented else "") + t.base


def parse_mood(text: str):
    """Parse "Barbara NXN" / "baroco nx?" into (Mood, ModalPattern).

    Three pattern letters assert the conclusion's modality; two letters
    (with optional "?") claim that no necessity conclusion follows, to be
    refuted by countermodel search.
    """
    from . import catalog  # deferred: catalog builds on this module

    parts = text.split()
    if len(parts) != 2:
        raise ParseError("expected '<mood> <pattern>'", SourceSpan(0, len(text.encode())))
    mood_text, pattern_text = parts
    mood = catalog.MOODS.get(mood_text.capitalize())
    if mood is None:
        at = text.find(mood_text)
        raise ParseError(
            f"unknown mood {mood_text!r}",
            SourceSpan(at, at + len(mood_text.encode())),
        )
    letters = pattern_text.upper()
    refute = letters.endswith("?")
    if refute:
        letters = letters[:-1]
    span = SourceSpan(len(text.encode()) - len(pattern_text.encode()), len(text.encode()))
    if len(letters) == 3 and not refute:
        premises, conclusion = (letters[0], letters[1]), letters[2]
        if conclusion not in "NXKM":
            raise ParseError(f"bad conclusion tag {conclusion!r}", span)
    elif len(letters) == 2:
        premises, conclusion = (letters[0], letters[1]), None
    else:
        raise ParseError(f"malformed pattern {pattern_text!r}", span)
    if any(tag not in "NXK" for tag in premises):
        raise ParseError(f"bad premise tags in {pattern_text!r}", span)
    return mood, catalog.ModalPattern(premises, conclusion)


# --- model files ----------------------------------------------------------


class ModelFormatError(ValueError):
    """A model file violates the schema; `path` names the offending field."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _expect(condition: bool, message: str, path: str):
    if not condition:
        raise ModelFormatError(message, path)


def _int(value, path: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), "expected an integer", path)
    return value


def decode_model(data: bytes | str) -> Model:
    """Strict reader for the model JSON format.

    Unknown fields, unsorted lists and duplicate individuals are rejected;
    `encode_model(decode_model(b)) == b` whenever b is canonically sorted.
    """
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}", "$") from None
    _expect(isinstance(obj, dict), "expected a JSON object", "$")
    expected = {"t_count", "world_sizes", "individuals", "concepts"}
    unknown = set(obj) - expected
    _expect(not unknown, f"unknown fields {sorted(unknown)}", "$")
    missing = expected - set(obj)
    _expect(not missing, f"missing fields {sorted(missing)}", "$")

    t_count = _int(obj["t_count"], "t_count")
    _expect(t_count >= 1, "must be >= 1", "t_count")
    sizes = obj["world_sizes"]
    _expect(isinstance(sizes, list) and len(sizes) == t_count, f"expected {t_count} entries", "world_sizes")
    world_sizes = tuple(_int(w, f"world_sizes[{t}]") for t, w in enumerate(sizes))
    for t, w in enumerate(world_sizes):
        _expect(w >= 1, "must be >= 1", f"world_sizes[{t}]")

    raw_inds = obj["individuals"]
    _expect(isinstance(raw_inds, list), "expected a list", "individuals")
    individuals = []
    for i, entry in enumerate(raw_inds):
        path = f"individuals[{i}]"
        _expect(isinstance(entry, list) and len(entry) == t_count, f"expected {t_count} components", path)
        ind = tuple(_int(c, f"{path}[{t}]") for t, c in enumerate(entry))
        for t, c in enumerate(ind):
            _expect(0 <= c < world_sizes[t], f"world element out of range at parameter {t}", path)
        individuals.append(ind)
    for i in range(1, len(individuals)):
        _expect(
            individuals[i - 1] < individuals[i],
            "individuals must be lexicographically sorted and duplicate-free",
            f"individuals[{i}]",
        )

    raw_concepts = obj["concepts"]
    _expect(isinstance(raw_concepts, dict), "expected an object", "concepts")
    concepts: dict[str, tuple[frozenset[int], ...]] = {}
    for name, exts in raw_concepts.items():
        path = f"concepts.{name}"
        _expect(len(name) == 1 and "A" <= name <= "Z", "concept names are single uppercase letters", path)
        _expect(isinstance(exts, list) and len(exts) == t_count, f"expected {t_count} extents", path)
        family = []
        for t, ext in enumerate(exts):
            tpath = f"{path}[{t}]"
            _expect(isinstance(ext, list), "expected a list", tpath)
            members = [_int(w, tpath) for w in ext]
            _expect(members == sorted(set(members)), "extents must be sorted and duplicate-free", tpath)
            for w in members:
                _expect(0 <= w < world_sizes[t], "world element out of range", tpath)
            family.append(frozenset(members))
        concepts[name] = tuple(family)

    return Model(t_count, world_sizes, tuple(individuals), concepts)


def encode_model(model: Model) -> bytes:
    """Canonical writer: sorted extents, sorted individuals, sorted names."""
    violations = model_core.validate(model)
    if violations:
        raise ValueError("refusing to encode an invalid model: " + "; ".join(violations))
    obj = {
        "t_count": model.t_count,
        "world_sizes": list(model.world_sizes),
        "individuals": [list(ind) for ind in model.individuals],
        "concepts": {
            name: [sorted(ext) for ext in model.extents(name)]
            for name in sorted(model.concepts)
        },
    }
    return (json.dumps(obj) + "\n").encode()
