"""Three-way classification of Boolean constraint languages.

The decision runs over the property vector, first match wins:

    0-valid or 1-valid          POLY_VALID
    bijunctive                  FPT_BIJUNCTIVE
    IHS-B+ or IHS-B-            APPROX_IHSB(B, polarity)
    affine                      ODDSET_EQUIVALENT
    self-dual                   HARD_NP
    anything else               HARD_WP

The hard cases are decided by elimination, so the narrative lists the
predicates that failed rather than naming a co-clone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .relations import Language, PropertyVector, property_vector

POLY_VALID = "POLY_VALID"
FPT_BIJUNCTIVE = "FPT_BIJUNCTIVE"
APPROX_IHSB = "APPROX_IHSB"
ODDSET_EQUIVALENT = "ODDSET_EQUIVALENT"
HARD_NP = "HARD_NP"
HARD_WP = "HARD_WP"

EASY = (POLY_VALID, FPT_BIJUNCTIVE, APPROX_IHSB)
HARD = (HARD_NP, HARD_WP)


@dataclass(frozen=True)
class TrichotomyClass:
    kind: str
    properties: PropertyVector
    narrative: tuple
    width: Optional[int] = None
    polarity: Optional[str] = None

    @property
    def label(self) -> str:
        if self.kind == APPROX_IHSB:
            sign = "+" if self.polarity == "plus" else "-"
            return f"{APPROX_IHSB}({self.width},{sign})"
        return self.kind

    @property
    def tier(self) -> str:
        if self.kind in EASY:
            return "fpt-approximable"
        if self.kind == ODDSET_EQUIVALENT:
            return "odd-set-equivalent"
        return "not-fpt-approximable"

    def __str__(self):
        return self.label


def _pick_ihs(props: PropertyVector):
    plus, minus = props.ihs_plus_width, props.ihs_minus_width
    if plus is None and minus is None:
        return None
    if minus is None or (plus is not None and plus <= minus):
        return plus, "plus"
    return minus, "minus"


def classify(language: Language) -> TrichotomyClass:
    props = property_vector(language)
    flags = props.flags()
    passed = [k for k, v in flags.items() if v]
    failed = [k for k, v in flags.items() if not v]
    notes = [
        "passed: " + (", ".join(passed) if passed else "none"),
        "failed: " + (", ".join(failed) if failed else "none"),
        f"ihs_plus_width: {props.ihs_plus_width if props.ihs_plus_width is not None else 'none'}",
        f"ihs_minus_width: {props.ihs_minus_width if props.ihs_minus_width is not None else 'none'}",
    ]

    def done(kind, why, width=None, polarity=None):
        return TrichotomyClass(kind, props, tuple([why] + notes), width, polarity)

    if props.zero_valid or props.one_valid:
        which = "0-valid" if props.zero_valid else "1-valid"
        return done(POLY_VALID, f"every relation is {which}; the constant assignment satisfies all constraints")
    if props.bijunctive:
        return done(FPT_BIJUNCTIVE, "every relation is maj3-closed; constraints reduce to grouped 2-clauses")
    ihs = _pick_ihs(props)
    if ihs is not None:
        width, polarity = ihs
        sign = "+" if polarity == "plus" else "-"
        return done(APPROX_IHSB,
                    f"IHS-B{sign} with width {width}; LP rounding gives ratio {width + 1} per clause",
                    width, polarity)
    if props.affine:
        kind = "self-dual" if props.self_dual else "not self-dual"
        return done(ODDSET_EQUIVALENT,
                    f"affine ({kind}) and not easy; equivalent to Odd Set and Nearest Codeword")
    if props.self_dual:
        return done(HARD_NP, "self-dual and no easy predicate holds; even the zero-budget case is NP-hard")
    return done(HARD_WP, "no easy predicate holds and not affine or self-dual; monotone circuit hardness applies")


def flat_report(result: TrichotomyClass) -> str:
    """Stable ``key=value`` lines for scripts."""
    p = result.properties
    lines = [
        f"class={result.kind}",
        f"label={result.label}",
        f"tier={result.tier}",
        f"width={result.width if result.width is not None else ''}",
        f"polarity={result.polarity or ''}",
    ]
    lines += [f"{k}={int(v)}" for k, v in p.flags().items()]
    lines.append(f"ihs_plus_width={p.ihs_plus_width if p.ihs_plus_width is not None else ''}")
    lines.append(f"ihs_minus_width={p.ihs_minus_width if p.ihs_minus_width is not None else ''}")
    return "\n".join(lines) + "\n"


def human_report(result: TrichotomyClass) -> str:
    lines = [f"class: {result.label}", f"tier: {result.tier}"]
    lines += [f"  {line}" for line in result.narrative]
    return "\n".join(lines) + "\n"
