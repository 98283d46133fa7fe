"""Finite two-sorted modal models and their exhaustive enumeration.

A model fixes a parameter set T = {0, .., t_count-1} (index 0 is the
designated "real" parameter), a finite world W_t for every parameter
(elements are the integers 0 .. |W_t|-1), a set of individual concepts
(tuples x with x[t] in W_t, identified by their graphs), and named concept
families A mapping each parameter t to an extent A_t, a subset of W_t.

Quantifiers in the statement semantics always range over the model's
individuals, never over W_0, so the individuals set is explicit model data:
interesting countermodels pick proper subsets of the full function set,
e.g. two individuals sharing their t=1 component.

Enumeration visits every model over given world sizes and concept names in
a documented canonical order (see `rank`): ascending rank agrees with
bytewise order on `canonical_key`, which is what makes "lexicographically
least countermodel" reporting cheap and thread-count independent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

ALL_FUNCTIONS = "AllFunctions"
ALL_SUBSETS = "AllSubsetsOfFunctions"
POLICIES = (ALL_FUNCTIONS, ALL_SUBSETS)

#: enumeration refuses to start above this many models unless overridden
DEFAULT_MAX_MODELS = 10**8

Extents = tuple[frozenset[int], ...]
Individual = tuple[int, ...]


class BoundsTooLarge(Exception):
    """The requested enumeration exceeds the configured model budget."""


@dataclass(frozen=True)
class Model:
    t_count: int
    world_sizes: tuple[int, ...]
    individuals: tuple[Individual, ...]
    concepts: dict[str, Extents]

    def extents(self, name: str) -> Extents:
        try:
            return self.concepts[name]
        except KeyError:
            raise KeyError(f"unknown concept {name!r}") from None


def make_model(world_sizes, individuals, concepts) -> Model:
    """Build a Model from plain lists/sets, normalizing representation.

    Individuals are sorted lexicographically; extents become frozensets.
    No validation happens here; pass the result to `validate`.
    """
    sizes = tuple(int(w) for w in world_sizes)
    inds = tuple(sorted(tuple(int(c) for c in ind) for ind in individuals))
    families = {
        str(name): tuple(frozenset(int(w) for w in ext) for ext in exts)
        for name, exts in concepts.items()
    }
    return Model(len(sizes), sizes, inds, families)


def validate(model: Model) -> list[str]:
    """Return one description per violated model invariant (empty = valid)."""
    out: list[str] = []
    if model.t_count < 1:
        out.append(f"t_count must be >= 1, got {model.t_count}")
        return out
    if len(model.world_sizes) != model.t_count:
        out.append(
            f"world_sizes has {len(model.world_sizes)} entries, "
            f"expected t_count = {model.t_count}"
        )
        return out
    for t, size in enumerate(model.world_sizes):
        if size < 1:
            out.append(f"world_sizes[{t}] must be >= 1, got {size}")

    seen: set[Individual] = set()
    for ind in model.individuals:
        if len(ind) != model.t_count:
            out.append(f"individual {ind} has length {len(ind)}, expected {model.t_count}")
            continue
        for t, component in enumerate(ind):
            if not 0 <= component < model.world_sizes[t]:
                out.append(f"individual {ind} is out of range at parameter {t}")
                break
        if ind in seen:
            out.append(f"individual {ind} occurs more than once")
        seen.add(ind)
    if list(model.individuals) != sorted(model.individuals):
        out.append("individuals are not in lexicographic order")

    for name, exts in model.concepts.items():
        if not (len(name) == 1 and "A" <= name <= "Z"):
            out.append(f"concept name {name!r} is not a single uppercase letter")
        if len(exts) != model.t_count:
            out.append(f"concept {name} has {len(exts)} extents, expected {model.t_count}")
            continue
        for t, ext in enumerate(exts):
            if not all(0 <= w < model.world_sizes[t] for w in ext):
                out.append(f"concept {name} has an out-of-range extent at parameter {t}")
    return out


@dataclass(frozen=True)
class EnumerationBounds:
    t_count: int
    world_sizes: tuple[int, ...]
    concept_names: tuple[str, ...]
    individual_policy: str = ALL_SUBSETS

    def __post_init__(self):
        if self.t_count < 1 or len(self.world_sizes) != self.t_count:
            raise ValueError("world_sizes length must equal t_count >= 1")
        if any(w < 1 for w in self.world_sizes):
            raise ValueError("world sizes must be positive")
        if not self.concept_names:
            raise ValueError("at least one concept name is required")
        if len(set(self.concept_names)) != len(self.concept_names):
            raise ValueError("concept names must be distinct")
        if self.individual_policy not in POLICIES:
            raise ValueError(f"unknown individual policy {self.individual_policy!r}")


def bounds(world_sizes, concept_names=("A", "B", "C"), policy=ALL_SUBSETS) -> EnumerationBounds:
    sizes = tuple(int(w) for w in world_sizes)
    return EnumerationBounds(len(sizes), sizes, tuple(concept_names), policy)


def functions(world_sizes: tuple[int, ...]) -> list[Individual]:
    """Every individual concept over the given worlds, in lexicographic order."""
    return list(itertools.product(*(range(w) for w in world_sizes)))


def function_count(world_sizes: tuple[int, ...]) -> int:
    n = 1
    for w in world_sizes:
        n *= w
    return n


def family_bits(world_sizes: tuple[int, ...]) -> int:
    """Bits in one concept-family code: sum of the world sizes."""
    return sum(world_sizes)


def model_count(b: EnumerationBounds) -> int:
    families = 1 << family_bits(b.world_sizes)
    total = families ** len(b.concept_names)
    if b.individual_policy == ALL_SUBSETS:
        total <<= function_count(b.world_sizes)
    return total


# --- canonical order ---------------------------------------------------
#
# rank = mixed-radix integer, most significant component first:
#   1. individuals-subset code S: bit i set <=> function #i (in the
#      lexicographic order of `functions`) is an individual.  Fixed to the
#      full set under AllFunctions, in which case it contributes no digits.
#   2. one family code per concept, in sorted name order.  A family code
#      concatenates the per-parameter extent bitmasks, parameter 0 at the
#      most significant end; within a parameter, bit w <=> world element w
#      belongs to the extent.


def _individuals_code(model: Model, funcs: list[Individual]) -> int:
    index = {f: i for i, f in enumerate(funcs)}
    code = 0
    for ind in model.individuals:
        code |= 1 << index[ind]
    return code


def _family_code(exts: Extents, world_sizes: tuple[int, ...]) -> int:
    code = 0
    for ext, size in zip(exts, world_sizes):
        part = 0
        for w in ext:
            part |= 1 << w
        code = (code << size) | part
    return code


def _family_from_code(code: int, world_sizes: tuple[int, ...]) -> Extents:
    exts = []
    for size in reversed(world_sizes):
        part = code & ((1 << size) - 1)
        code >>= size
        exts.append(frozenset(w for w in range(size) if part >> w & 1))
    return tuple(reversed(exts))


def rank(model: Model, b: EnumerationBounds) -> int:
    """Position of the model in the canonical enumeration at bounds b."""
    funcs = functions(b.world_sizes)
    radix = 1 << family_bits(b.world_sizes)
    r = _individuals_code(model, funcs) if b.individual_policy == ALL_SUBSETS else 0
    for name in sorted(b.concept_names):
        r = r * radix + _family_code(model.extents(name), b.world_sizes)
    return r


def model_at_rank(b: EnumerationBounds, r: int) -> Model:
    funcs = functions(b.world_sizes)
    radix = 1 << family_bits(b.world_sizes)
    codes = []
    for _ in b.concept_names:
        r, code = divmod(r, radix)
        codes.append(code)
    codes.reverse()
    if b.individual_policy == ALL_SUBSETS:
        subset_code = r
    else:
        subset_code = (1 << len(funcs)) - 1
    individuals = tuple(f for i, f in enumerate(funcs) if subset_code >> i & 1)
    concepts = {
        name: _family_from_code(code, b.world_sizes)
        for name, code in zip(sorted(b.concept_names), codes)
    }
    return Model(b.t_count, b.world_sizes, individuals, concepts)


def enumerate_models(
    b: EnumerationBounds,
    start: int = 0,
    stop: int | None = None,
    max_models: int = DEFAULT_MAX_MODELS,
) -> Iterator[Model]:
    """Yield every model at bounds b in canonical order.

    The order is identical across runs and across any partitioning of the
    [start, stop) rank range, simply because rank determines the model.
    """
    total = model_count(b)
    if total > max_models:
        raise BoundsTooLarge(f"{total} models at these bounds exceeds the limit {max_models}")
    if stop is None or stop > total:
        stop = total
    for r in range(start, stop):
        yield model_at_rank(b, r)


def canonical_key(model: Model) -> bytes:
    """Injective byte encoding of a model; bytewise order == rank order.

    Layout: t_count (u8), world_sizes (u8 each), concept count (u8),
    concept names (ASCII, sorted), individuals-subset code, then one family
    code per concept in name order, each as a fixed-width big-endian
    integer.  `decode_canonical_key` inverts it.
    """
    if not 1 <= model.t_count <= 255:
        raise ValueError("canonical_key supports 1..255 parameters")
    if any(w > 255 for w in model.world_sizes) or len(model.concepts) > 255:
        raise ValueError("canonical_key supports sizes and concept counts up to 255")
    names = sorted(model.concepts)
    head = bytes([model.t_count, *model.world_sizes, len(names)])
    head += "".join(names).encode("ascii")
    funcs = functions(model.world_sizes)
    subset_width = (len(funcs) + 7) // 8
    family_width = (family_bits(model.world_sizes) + 7) // 8
    body = _individuals_code(model, funcs).to_bytes(subset_width, "big")
    for name in names:
        body += _family_code(model.extents(name), model.world_sizes).to_bytes(
            family_width, "big"
        )
    return head + body


def decode_canonical_key(key: bytes) -> Model:
    t_count = key[0]
    world_sizes = tuple(key[1 : 1 + t_count])
    pos = 1 + t_count
    names = [chr(c) for c in key[pos + 1 : pos + 1 + key[pos]]]
    pos += 1 + key[pos]
    funcs = functions(world_sizes)
    subset_width = (len(funcs) + 7) // 8
    family_width = (family_bits(world_sizes) + 7) // 8
    subset_code = int.from_bytes(key[pos : pos + subset_width], "big")
    pos += subset_width
    individuals = tuple(f for i, f in enumerate(funcs) if subset_code >> i & 1)
    concepts = {}
    for name in names:
        code = int.from_bytes(key[pos : pos + family_width], "big")
        pos += family_width
        concepts[name] = _family_from_code(code, world_sizes)
    if pos != len(key):
        raise ValueError("trailing bytes in canonical key")
    return Model(t_count, world_sizes, individuals, concepts)
