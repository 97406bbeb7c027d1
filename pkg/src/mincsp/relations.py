"""Boolean relations, constraint languages and their structural properties.

A relation of arity ``n`` is a membership table of ``2**n`` flags.  Tuples
are indexed by reading them as binary numbers with the leftmost coordinate
as the most significant bit, so ``(0, 1, 1)`` is entry 3.

Horn, dual-Horn, bijunctive and affine are each decided twice: once by a
polymorphism closure test and once syntactically (implied clauses, or the
affine hull), and the two answers are required to agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Optional

import numpy as np

from . import gf2
from .errors import InternalInconsistency, MalformedRelation, ParseError

MAX_ARITY = 16
# implied-clause cross-checks enumerate exponentially many clauses
CROSS_CHECK_MAX_ARITY = 10

CLOSURE_OPS = ("and2", "or2", "maj3", "xor3", "not1")

POSITIVE_UNIT = "positive-unit"
NEGATIVE_UNIT = "negative-unit"
IMPLICATION = "implication"
POSITIVE_OR = "positive-or"
NEGATIVE_OR = "negative-or"
GENERAL = "general"
CLAUSE_SHAPES = (POSITIVE_UNIT, NEGATIVE_UNIT, IMPLICATION, POSITIVE_OR, NEGATIVE_OR, GENERAL)

IHS_PLUS_SHAPES = frozenset({POSITIVE_UNIT, NEGATIVE_UNIT, IMPLICATION, POSITIVE_OR})
IHS_MINUS_SHAPES = frozenset({POSITIVE_UNIT, NEGATIVE_UNIT, IMPLICATION, NEGATIVE_OR})
BINARY_SHAPES = frozenset({POSITIVE_UNIT, NEGATIVE_UNIT, IMPLICATION, POSITIVE_OR, NEGATIVE_OR})


@dataclass(frozen=True)
class Relation:
    """Nonempty Boolean relation stored as a membership table.

    ``table`` holds one byte (0 or 1) per tuple in canonical order.  Use
    :func:`make_relation` or the builders below rather than the constructor.
    """

    arity: int
    table: bytes = field(repr=False)
    name: Optional[str] = None

    def __post_init__(self):
        if not 1 <= self.arity <= MAX_ARITY:
            raise MalformedRelation(f"arity {self.arity} outside 1..{MAX_ARITY}")
        if len(self.table) != 1 << self.arity:
            raise MalformedRelation("membership table size does not match arity")
        if not any(self.table):
            raise MalformedRelation("relation has no tuples")

    @cached_property
    def mask(self) -> np.ndarray:
        return np.frombuffer(self.table, dtype=np.uint8).astype(bool)

    @cached_property
    def codes(self) -> np.ndarray:
        """Member tuples as integers, ascending."""
        return np.flatnonzero(self.mask).astype(np.int64)

    def __len__(self):
        return int(self.codes.size)

    def __contains__(self, tup) -> bool:
        return bool(self.mask[encode(tup)])

    def tuples(self):
        return [decode(int(c), self.arity) for c in self.codes]

    def bitstrings(self):
        return ["".join(map(str, t)) for t in self.tuples()]

    def renamed(self, name):
        return Relation(self.arity, self.table, name)

    def same_tuples(self, other: "Relation") -> bool:
        return self.arity == other.arity and self.table == other.table

    def complemented(self, name=None) -> "Relation":
        """Relation of coordinatewise negated tuples."""
        full = (1 << self.arity) - 1
        table = np.zeros(1 << self.arity, dtype=np.uint8)
        table[full ^ self.codes] = 1
        return Relation(self.arity, table.tobytes(), name)

    def __repr__(self):
        label = self.name or "?"
        return f"Relation({label}/{self.arity}: {{{','.join(self.bitstrings())}}})"


def encode(tup) -> int:
    code = 0
    for b in tup:
        code = (code << 1) | (1 if b else 0)
    return code


def decode(code: int, arity: int) -> tuple:
    return tuple((code >> (arity - 1 - i)) & 1 for i in range(arity))


def make_relation(arity: int, tuples: Iterable, name: Optional[str] = None) -> Relation:
    """Relation from a collection of bit-strings or 0/1 sequences."""
    if not isinstance(arity, (int, np.integer)) or not 1 <= arity <= MAX_ARITY:
        raise MalformedRelation(f"arity {arity} outside 1..{MAX_ARITY}")
    table = np.zeros(1 << arity, dtype=np.uint8)
    for tup in tuples:
        if isinstance(tup, str):
            if any(ch not in "01" for ch in tup):
                raise MalformedRelation(f"not a bit-string: {tup!r}")
            tup = tuple(int(ch) for ch in tup)
        tup = tuple(tup)
        if len(tup) != arity:
            raise MalformedRelation(f"tuple {tup} does not have length {arity}")
        if any(b not in (0, 1) for b in tup):
            raise MalformedRelation(f"tuple {tup} is not Boolean")
        table[encode(tup)] = 1
    if not table.any():
        raise MalformedRelation("relation has no tuples")
    return Relation(int(arity), table.tobytes(), name)


def relation_from_predicate(arity: int, pred: Callable[[tuple], bool], name=None) -> Relation:
    return make_relation(arity, (t for t in itertools.product((0, 1), repeat=arity) if pred(t)), name)


# -- standard relations ------------------------------------------------------

def unit(value: int = 1) -> Relation:
    """``x`` (value 1) or ``not x`` (value 0)."""
    return make_relation(1, [(value,)], "x" if value else "nx")


def implication() -> Relation:
    return make_relation(2, ["00", "01", "11"], "imp")


def xor() -> Relation:
    return make_relation(2, ["01", "10"], "xor")


def equality() -> Relation:
    return make_relation(2, ["00", "11"], "eq")


def even(n: int) -> Relation:
    return relation_from_predicate(n, lambda t: sum(t) % 2 == 0, f"even{n}")


def odd(n: int) -> Relation:
    return relation_from_predicate(n, lambda t: sum(t) % 2 == 1, f"odd{n}")


def or_(m: int) -> Relation:
    return relation_from_predicate(m, any, f"or{m}")


def nand(m: int) -> Relation:
    return relation_from_predicate(m, lambda t: not all(t), f"nand{m}")


def nae() -> Relation:
    return relation_from_predicate(3, lambda t: 0 < sum(t) < 3, "nae")


def clause_relation(signs, name=None) -> Relation:
    """Relation of a single clause; ``signs[i]`` is True for a positive literal."""
    signs = tuple(bool(s) for s in signs)
    if name is None:
        name = "cl_" + "".join("p" if s else "n" for s in signs)
    return relation_from_predicate(
        len(signs), lambda t: any(b == s for b, s in zip(t, signs)), name)


# -- languages ---------------------------------------------------------------

@dataclass(frozen=True)
class Language:
    relations: tuple

    def __post_init__(self):
        rels = tuple(self.relations)
        object.__setattr__(self, "relations", rels)
        if not rels:
            raise MalformedRelation("a language needs at least one relation")
        names = [r.name for r in rels]
        if any(n is None for n in names):
            raise MalformedRelation("every relation in a language needs a name")
        if len(set(names)) != len(names):
            raise MalformedRelation("relation names in a language must be unique")

    def __getitem__(self, name) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(r.name == name for r in self.relations)

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)

    @property
    def names(self):
        return tuple(r.name for r in self.relations)

    @property
    def max_arity(self) -> int:
        return max(r.arity for r in self.relations)

    def with_relation(self, relation: Relation) -> "Language":
        if relation.name in self:
            if self[relation.name] != relation:
                raise MalformedRelation(f"conflicting definitions of {relation.name}")
            return self
        return Language(self.relations + (relation,))

    def without(self, name) -> "Language":
        return Language(tuple(r for r in self.relations if r.name != name))


def B2() -> Language:
    return Language((even(4), unit(1), unit(0)))


def B3() -> Language:
    return Language((even(4), xor()))


# -- closure tests -----------------------------------------------------------

def _apply(op, parts):
    if op == "and2":
        return parts[0] & parts[1]
    if op == "or2":
        return parts[0] | parts[1]
    if op == "maj3":
        a, b, c = parts
        return (a & b) | (a & c) | (b & c)
    if op == "xor3":
        return parts[0] ^ parts[1] ^ parts[2]
    raise ValueError(f"unknown operation {op!r}")


def closed_under(relation: Relation, op: str) -> bool:
    """Whether ``op`` applied coordinatewise to member tuples stays inside.

    Every combination of members is tried (``|R|**arity(op)`` of them).
    """
    codes = relation.codes
    mask = relation.mask
    if op == "not1":
        full = (1 << relation.arity) - 1
        return bool(mask[full ^ codes].all())
    if op in ("and2", "or2"):
        out = _apply(op, (codes[:, None], codes[None, :]))
        return bool(mask[out].all())
    if op in ("maj3", "xor3"):
        pair_a = codes[:, None]
        pair_b = codes[None, :]
        for c in codes:
            out = _apply(op, (pair_a, pair_b, c))
            if not mask[out].all():
                return False
        return True
    raise ValueError(f"unknown operation {op!r}")


# -- clauses -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Clause:
    """Disjunction of literals over coordinates of a relation.

    ``polarities[i]`` is True when the literal on ``coordinates[i]`` is
    positive.  Coordinates may repeat.
    """

    coordinates: tuple
    polarities: tuple

    def __post_init__(self):
        if len(self.coordinates) < 1 or len(self.coordinates) != len(self.polarities):
            raise ValueError("a clause needs at least one literal and one polarity per coordinate")

    @property
    def width(self) -> int:
        return len(self.coordinates)

    @property
    def n_positive(self) -> int:
        return sum(1 for p in self.polarities if p)

    @property
    def n_negative(self) -> int:
        return self.width - self.n_positive

    @property
    def shape(self) -> str:
        pos, neg = self.n_positive, self.n_negative
        if neg == 0:
            return POSITIVE_UNIT if pos == 1 else POSITIVE_OR
        if pos == 0:
            return NEGATIVE_UNIT if neg == 1 else NEGATIVE_OR
        if pos == 1 and neg == 1:
            return IMPLICATION
        return GENERAL

    def satisfied_by(self, tup) -> bool:
        return any(bool(tup[c]) == p for c, p in zip(self.coordinates, self.polarities))

    def __str__(self):
        return " | ".join(("" if p else "~") + f"x{c}" for c, p in zip(self.coordinates, self.polarities))


def _violation_pattern(clause: Clause, arity: int):
    mask = val = 0
    for c, p in zip(clause.coordinates, clause.polarities):
        bit = 1 << (arity - 1 - c)
        mask |= bit
        if not p:
            val |= bit
    return mask, val


def implied_clauses(relation: Relation, max_width: int, accept: Callable[[Clause], bool]):
    """Subsumption-minimal clauses over distinct coordinates implied by ``relation``.

    Only clauses for which ``accept`` is true are considered.
    """
    arity = relation.arity
    codes = relation.codes
    found = []
    found_lits = []
    for width in range(1, min(max_width, arity) + 1):
        for coords in itertools.combinations(range(arity), width):
            for pols in itertools.product((True, False), repeat=width):
                clause = Clause(coords, pols)
                if not accept(clause):
                    continue
                lits = frozenset(zip(coords, pols))
                if any(prev <= lits for prev in found_lits):
                    continue
                mask, val = _violation_pattern(clause, arity)
                if np.any((codes & mask) == val):
                    continue
                found.append(clause)
                found_lits.append(lits)
    return sorted(found, key=lambda c: (c.width, c.coordinates, tuple(not p for p in c.polarities)))


def conjunction_table(clauses, arity: int) -> np.ndarray:
    idx = np.arange(1 << arity, dtype=np.int64)
    ok = np.ones(1 << arity, dtype=bool)
    for clause in clauses:
        mask, val = _violation_pattern(clause, arity)
        ok &= (idx & mask) != val
    return ok


def _decompose(relation: Relation, max_width: int, accept) -> Optional[list]:
    clauses = implied_clauses(relation, max_width, accept)
    if np.array_equal(conjunction_table(clauses, relation.arity), relation.mask):
        return clauses
    return None


def clause_decomposition(relation: Relation, shapes, max_width: int) -> Optional[list]:
    """Clauses of the given shapes (width <= ``max_width``) whose conjunction is ``relation``.

    Returns the canonical subsumption-minimal list of implied clauses, or
    None when their conjunction is strictly larger than the relation.
    """
    shapes = frozenset(shapes)
    unknown = shapes - set(CLAUSE_SHAPES)
    if unknown:
        raise ValueError(f"unknown clause shapes {sorted(unknown)}")
    return _decompose(relation, max_width, lambda c: c.shape in shapes)


def ihs_decomposition(relation: Relation, width: int, polarity: str) -> Optional[list]:
    """Decomposition into units, implications and width-bounded one-signed clauses."""
    if polarity == "plus":
        shapes, wide = IHS_PLUS_SHAPES, POSITIVE_OR
    elif polarity == "minus":
        shapes, wide = IHS_MINUS_SHAPES, NEGATIVE_OR
    else:
        raise ValueError(f"polarity must be 'plus' or 'minus', not {polarity!r}")

    def accept(c):
        return c.shape in shapes and (c.shape != wide or c.width <= width)

    return _decompose(relation, max(width, 2), accept)


def horn_decomposition(relation: Relation):
    return _decompose(relation, relation.arity, lambda c: c.n_positive <= 1)


def dual_horn_decomposition(relation: Relation):
    return _decompose(relation, relation.arity, lambda c: c.n_negative <= 1)


def binary_decomposition(relation: Relation):
    return _decompose(relation, 2, lambda c: True)


def affine_hull_equal(relation: Relation) -> bool:
    """True when the relation equals the affine subspace spanned by its members."""
    codes = relation.codes
    shifted = codes ^ codes[0]
    arity = relation.arity
    bits = ((shifted[:, None] >> np.arange(arity - 1, -1, -1)) & 1).astype(np.uint8)
    r = gf2.rank(gf2.Gf2Matrix(bits, cols=arity))
    return len(codes) == 1 << r


def is_irredundant(relation: Relation) -> bool:
    """Every pair of coordinates differs in at least one member tuple."""
    arity = relation.arity
    codes = relation.codes
    for i, j in itertools.combinations(range(arity), 2):
        bi = (codes >> (arity - 1 - i)) & 1
        bj = (codes >> (arity - 1 - j)) & 1
        if not np.any(bi != bj):
            return False
    return True


# -- property vector ---------------------------------------------------------

@dataclass(frozen=True)
class PropertyVector:
    zero_valid: bool
    one_valid: bool
    horn: bool
    dual_horn: bool
    bijunctive: bool
    affine: bool
    self_dual: bool
    irredundant: bool
    ihs_plus_width: Optional[int] = None
    ihs_minus_width: Optional[int] = None

    def flags(self):
        return {
            "zero_valid": self.zero_valid,
            "one_valid": self.one_valid,
            "horn": self.horn,
            "dual_horn": self.dual_horn,
            "bijunctive": self.bijunctive,
            "affine": self.affine,
            "self_dual": self.self_dual,
            "irredundant": self.irredundant,
        }


_SYNTACTIC = {
    "horn": ("and2", horn_decomposition),
    "dual_horn": ("or2", dual_horn_decomposition),
    "bijunctive": ("maj3", binary_decomposition),
}


@lru_cache(maxsize=4096)
def relation_properties(relation: Relation) -> dict:
    """Per-relation predicates, each cross-checked where a second mechanism exists."""
    props = {
        "zero_valid": bool(relation.mask[0]),
        "one_valid": bool(relation.mask[-1]),
        "self_dual": closed_under(relation, "not1"),
        "irredundant": is_irredundant(relation),
    }
    cross = relation.arity <= CROSS_CHECK_MAX_ARITY
    for key, (op, decompose) in _SYNTACTIC.items():
        semantic = closed_under(relation, op)
        if cross:
            syntactic = decompose(relation) is not None
            if syntactic != semantic:
                raise InternalInconsistency(
                    f"{key} of {relation!r}: {op}-closure says {semantic}, clauses say {syntactic}")
        props[key] = semantic
    semantic = closed_under(relation, "xor3")
    if semantic != affine_hull_equal(relation):
        raise InternalInconsistency(f"affine test disagreement on {relation!r}")
    props["affine"] = semantic
    return props


def min_ihs_width(language: Language, polarity: str) -> Optional[int]:
    """Least clause width B for which every relation is IHS-B of the polarity."""
    for width in range(1, language.max_arity + 1):
        if all(ihs_decomposition(r, width, polarity) is not None for r in language):
            return max(width, 1)
    return None


def property_vector(language: Language) -> PropertyVector:
    per = [relation_properties(r) for r in language]
    agg = {key: all(p[key] for p in per) for key in per[0]}
    return PropertyVector(
        zero_valid=agg["zero_valid"],
        one_valid=agg["one_valid"],
        horn=agg["horn"],
        dual_horn=agg["dual_horn"],
        bijunctive=agg["bijunctive"],
        affine=agg["affine"],
        self_dual=agg["self_dual"],
        irredundant=agg["irredundant"],
        ihs_plus_width=min_ihs_width(language, "plus"),
        ihs_minus_width=min_ihs_width(language, "minus"),
    )


def language_is_irredundant(language: Language) -> bool:
    return all(is_irredundant(r) for r in language)


# -- .lang format ------------------------------------------------------------

def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_relation_blocks(lines, start=0):
    """Parse ``relation`` blocks from ``lines`` (a list of (lineno, text)).

    Returns the relations and the unconsumed remainder.
    """
    relations = []
    rest = []
    it = iter(lines)
    for lineno, text in it:
        words = text.split()
        if not words or words[0] != "relation":
            rest.append((lineno, text))
            continue
        if len(words) != 3:
            raise ParseError("expected 'relation <name> <arity>'", lineno)
        name = words[1]
        try:
            arity = int(words[2])
        except ValueError:
            raise ParseError(f"bad arity {words[2]!r}", lineno) from None
        tuples = []
        for lineno2, body in it:
            if body == "end":
                break
            if len(body.split()) != 1:
                raise ParseError("expected one bit-string tuple per line", lineno2)
            tuples.append(body)
        else:
            raise ParseError(f"relation {name} is missing 'end'", lineno)
        try:
            relations.append(make_relation(arity, tuples, name))
        except MalformedRelation as exc:
            raise ParseError(str(exc), lineno) from None
    return relations, rest


def numbered_lines(text: str):
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if line:
            out.append((i, line))
    return out


def parse_language(text: str) -> Language:
    relations, rest = parse_relation_blocks(numbered_lines(text))
    if rest:
        raise ParseError(f"unexpected {rest[0][1]!r}", rest[0][0])
    try:
        return Language(tuple(relations))
    except MalformedRelation as exc:
        raise ParseError(str(exc)) from None


def format_relation(relation: Relation) -> str:
    return "\n".join([f"relation {relation.name} {relation.arity}", *relation.bitstrings(), "end"])


def serialize_language(language: Language) -> str:
    return "\n".join(format_relation(r) for r in language) + "\n"
