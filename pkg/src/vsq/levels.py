"""Pr3+:LaF3 level data and the two working-level schemes.

Every term is anchored by a single wavelength measured from the 3H4 ground
term; the anchor is taken to connect the lowest quadrupole sublevel of 3H4
with the lowest sublevel of the term. Quadrupole ladders (offsets in MHz above
the lowest sublevel) are known for 3H4 and 3P0 only.

Note: the builtin 3H6 anchor of 240 nm is kept exactly as tabulated in the
source level diagram even though it disagrees with standard Pr3+ spectroscopy,
where 3H6 sits in the infrared just above the ground multiplet.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path

from vsq.errors import SameRole, UnknownLevel, UnknownScheme

SPEED_OF_LIGHT = 2.99792458e8  # m/s
RF_LIMIT_HZ = 1e9
OPTICAL_FLOOR_HZ = 1e13
DEFAULT_MIN_SEP_HZ = 1e4
DATASET_ENV = "VSQ_DATASET"

TERM_LABELS = ("3H4", "3H6", "1D2", "3P0", "3P1")
PRETTY = {"3H4": "³H₄", "3H6": "³H₆", "1D2": "¹D₂", "3P0": "³P₀", "3P1": "³P₁"}

# (E_i, E_j) pairs driven by the four gates: ry_s, ry_r, cnot_rs, cnot_sr
GATE_TRANSITIONS = ((0, 1), (2, 3), (0, 2), (1, 3))


@dataclass(frozen=True)
class Sublevel:
    mI: str
    offset_mhz: float


@dataclass(frozen=True)
class Term:
    label: str
    anchor_nm: float | None = None
    sublevels: tuple[Sublevel, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sublevels", tuple(self.sublevels))
        if self.anchor_nm is not None and not self.anchor_nm > 0:
            raise ValueError(f"{self.label}: anchor wavelength must be positive")
        offs = [s.offset_mhz for s in self.sublevels]
        if offs and offs[0] != 0:
            raise ValueError(f"{self.label}: lowest sublevel offset must be 0")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError(f"{self.label}: sublevel offsets must strictly increase")
        if len({s.mI for s in self.sublevels}) != len(self.sublevels):
            raise ValueError(f"{self.label}: duplicate sublevel labels")

    def offset(self, mI: str | None) -> float:
        if mI is None:
            return 0.0
        for s in self.sublevels:
            if s.mI == mI:
                return s.offset_mhz
        raise UnknownLevel(f"term {self.label} has no sublevel |mI|={mI}")

    def splittings(self) -> list[float]:
        """Gaps between adjacent sublevels in MHz.

        Differences are taken in decimal so that tabulated values such as
        25.17 - 8.47 come back as 16.7 rather than 16.700000000000003.
        """
        offs = [Decimal(repr(s.offset_mhz)) for s in self.sublevels]
        return [float(b - a) for a, b in zip(offs, offs[1:])]


@dataclass(frozen=True)
class SpectroscopicDataset:
    terms: tuple[Term, ...]
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        labels = [t.label for t in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError("term labels must be unique")

    def term(self, label: str) -> Term:
        for t in self.terms:
            if t.label == label:
                return t
        raise UnknownLevel(f"dataset has no term {label!r}")

    def to_dict(self) -> dict:
        out = {"terms": []}
        for t in self.terms:
            rec = {"label": t.label}
            if t.anchor_nm is not None:
                rec["anchor_nm"] = t.anchor_nm
            rec["sublevels"] = [{"mI": s.mI, "offset_mhz": s.offset_mhz} for s in t.sublevels]
            out["terms"].append(rec)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "SpectroscopicDataset":
        terms = []
        for rec in d["terms"]:
            subs = tuple(Sublevel(str(s["mI"]), float(s["offset_mhz"])) for s in rec.get("sublevels", []))
            anchor = rec.get("anchor_nm")
            terms.append(Term(rec["label"], None if anchor is None else float(anchor), subs))
        return cls(tuple(terms), float(d.get("speed_of_light", SPEED_OF_LIGHT)))

    @classmethod
    def from_json(cls, text: str) -> "SpectroscopicDataset":
        return cls.from_dict(json.loads(text))


def builtin_pr_laf3() -> SpectroscopicDataset:
    return SpectroscopicDataset(
        (
            Term("3H4", None, (Sublevel("1/2", 0.0), Sublevel("3/2", 8.47), Sublevel("5/2", 25.17))),
            Term("3P0", 477.7, (Sublevel("1/2", 0.0), Sublevel("3/2", 0.45), Sublevel("5/2", 1.17))),
            Term("1D2", 592.5),
            Term("3P1", 450.0),
            Term("3H6", 240.0),
        )
    )


def load_dataset(path: str | os.PathLike | None = None) -> SpectroscopicDataset:
    """Dataset from ``path``, else from ``$VSQ_DATASET``, else the builtin table."""
    path = path or os.environ.get(DATASET_ENV)
    if not path:
        return builtin_pr_laf3()
    return SpectroscopicDataset.from_json(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class PhysLevel:
    term: str
    sublevel: str | None = None  # None means the term's lowest sublevel

    def __str__(self):
        return f"{self.term}({self.sublevel or 'lowest'})"

    def key(self, d: SpectroscopicDataset) -> tuple[str, float]:
        """Identity up to naming: ``3H4(lowest)`` and ``3H4(1/2)`` coincide."""
        return self.term, d.term(self.term).offset(self.sublevel)


def level_frequency(d: SpectroscopicDataset, level: PhysLevel) -> float:
    """Absolute frequency in Hz above 3H4(lowest)."""
    term = d.term(level.term)
    if level.sublevel is not None and not term.sublevels:
        raise UnknownLevel(f"term {term.label} has no resolved sublevels")
    base = 0.0 if term.anchor_nm is None else d.speed_of_light / (term.anchor_nm * 1e-9)
    return base + term.offset(level.sublevel) * 1e6


def level_gap(d: SpectroscopicDataset, a: PhysLevel, b: PhysLevel) -> float:
    """``|f(a) - f(b)|`` in Hz; exact within one term's quadrupole ladder."""
    if a.term == b.term:
        ta = d.term(a.term)
        oa = Decimal(repr(ta.offset(a.sublevel)))
        ob = Decimal(repr(ta.offset(b.sublevel)))
        return float(abs(oa - ob) * 1_000_000)
    return abs(level_frequency(d, a) - level_frequency(d, b))


@dataclass(frozen=True)
class LevelScheme:
    name: str
    assignment: tuple[PhysLevel, PhysLevel, PhysLevel, PhysLevel]
    readout_term: str = "3P1"
    min_sep_hz: float = DEFAULT_MIN_SEP_HZ
    # transitions as the literature lists them, matched to GATE_TRANSITIONS by validate()
    listed_transitions: tuple[tuple[PhysLevel, PhysLevel], ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != 4:
            raise ValueError("a level scheme assigns exactly four levels E0..E3")

    def level(self, role: int) -> PhysLevel:
        return self.assignment[role]


def _L(term, sub=None):
    return PhysLevel(term, sub)


def scheme(name: str) -> LevelScheme:
    if name == "fig3":
        return LevelScheme(
            "fig3",
            (_L("3H4"), _L("3H6"), _L("1D2"), _L("3P0")),
            listed_transitions=(
                (_L("3H4"), _L("3H6")),
                (_L("1D2"), _L("3P0")),
                (_L("3H6"), _L("3P0")),
                (_L("3H4"), _L("1D2")),
            ),
        )
    if name == "fig4":
        return LevelScheme(
            "fig4",
            (_L("3H4"), _L("3P0", "1/2"), _L("3P0", "3/2"), _L("3P0", "5/2")),
            listed_transitions=(
                (_L("3H4"), _L("3P0", "1/2")),
                (_L("3H4"), _L("3P0", "3/2")),
                (_L("3P0", "3/2"), _L("3P0", "5/2")),
                (_L("3P0", "1/2"), _L("3P0", "5/2")),
            ),
        )
    raise UnknownScheme(f"unknown scheme {name!r}; expected 'fig3' or 'fig4'")


def transition_frequency(s: LevelScheme, d: SpectroscopicDataset, pair: tuple[int, int]) -> float:
    i, j = pair
    if i == j:
        raise SameRole(f"transition needs two distinct roles, got E{i} twice")
    return level_gap(d, s.level(i), s.level(j))


@dataclass
class ValidationReport:
    scheme: str
    distinct: bool
    duplicates: list[tuple[int, int]]
    carriers: dict[tuple[int, int], float]
    separations: dict[tuple[tuple[int, int], tuple[int, int]], float]
    min_separation: float
    min_sep: float
    rf: dict[tuple[int, int], bool]
    optical: dict[tuple[int, int], bool]
    ground_lowest: bool
    errors: list[str]

    @property
    def passed(self) -> bool:
        return not self.errors


def validate(s: LevelScheme, d: SpectroscopicDataset, min_sep: float | None = None) -> ValidationReport:
    """Check that a scheme's four levels are distinct and its gate carriers resolvable."""
    min_sep = s.min_sep_hz if min_sep is None else min_sep
    if not min_sep > 0:
        raise ValueError("min_sep must be positive")
    errors: list[str] = []
    try:
        keys = [lvl.key(d) for lvl in s.assignment]
        freqs = [level_frequency(d, lvl) for lvl in s.assignment]
    except UnknownLevel as exc:
        return ValidationReport(s.name, False, [], {}, {}, 0.0, min_sep, {}, {}, False, [str(exc)])

    duplicates = [(i, j) for i, j in itertools.combinations(range(4), 2) if keys[i] == keys[j]]
    for i, j in duplicates:
        errors.append(f"duplicate level: E{i} and E{j} are both {s.level(i)}")
    ground_lowest = all(freqs[0] < f for f in freqs[1:])
    if not ground_lowest:
        errors.append("E0 is not the lowest working level")

    carriers = {}
    if not duplicates:
        carriers = {pair: transition_frequency(s, d, pair) for pair in GATE_TRANSITIONS}
    separations = {
        (a, b): abs(carriers[a] - carriers[b]) for a, b in itertools.combinations(carriers, 2)
    }
    min_separation = min(separations.values()) if separations else 0.0
    for (a, b), gap in separations.items():
        if gap < min_sep:
            errors.append(
                f"carriers E{a[0]}-E{a[1]} and E{b[0]}-E{b[1]} separated by {gap:.6g} Hz < {min_sep:g} Hz"
            )
    return ValidationReport(
        scheme=s.name,
        distinct=not duplicates,
        duplicates=duplicates,
        carriers=carriers,
        separations=separations,
        min_separation=min_separation,
        min_sep=min_sep,
        rf={p: f < RF_LIMIT_HZ for p, f in carriers.items()},
        optical={p: f > OPTICAL_FLOOR_HZ for p, f in carriers.items()},
        ground_lowest=ground_lowest,
        errors=errors,
    )


def match_listed_transitions(s: LevelScheme, d: SpectroscopicDataset) -> dict[tuple[int, int], tuple[PhysLevel, PhysLevel]]:
    """Pair every gate transition with exactly one listed physical transition.

    Raises ``ValueError`` when the correspondence is not a bijection.
    """
    role_of = {lvl.key(d): k for k, lvl in enumerate(s.assignment)}
    out = {}
    for a, b in s.listed_transitions:
        try:
            pair = tuple(sorted((role_of[a.key(d)], role_of[b.key(d)])))
        except KeyError:
            raise ValueError(f"listed transition {a}<->{b} uses a non-working level") from None
        if pair in out:
            raise ValueError(f"transition E{pair[0]}-E{pair[1]} listed twice")
        out[pair] = (a, b)
    if set(out) != set(GATE_TRANSITIONS):
        raise ValueError(f"listed transitions {sorted(out)} differ from gate set {sorted(GATE_TRANSITIONS)}")
    return out
