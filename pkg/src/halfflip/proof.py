"""Structural checks behind the avoidance proofs, witness descent, and theorem pipelines.

Each ``check_*`` function returns a :class:`CheckOutcome` carrying the
evidence. :func:`verify_theorem` runs the checks for one theorem item in a
fixed order and aggregates them into a :class:`CheckReport`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .detect import HalfFlipWitness, infinite_halfflip_check
from .factors import (
    DEFAULT_MAX_MATERIAL,
    factor_set_descent,
    image_factor_set,
    offset_profile,
    two_letter_factors,
)
from .words import C, F2, F3, M, M_SPEC, FixedPointSpec, UniformMorphism, Word, WordLike, as_word, validate_morphism

__all__ = [
    "CheckOutcome",
    "CheckReport",
    "DistinctnessTable",
    "AlignmentInfo",
    "DescentError",
    "MisalignmentError",
    "AmbiguousExtensionError",
    "InconsistentWitnessError",
    "PremiseError",
    "consecutive",
    "check_synchronization",
    "check_marker_coverage",
    "check_successor_property",
    "check_offset_uniqueness",
    "build_distinctness_table",
    "check_distinctness_table",
    "check_exception_pairs_nonconsecutive",
    "check_alpha_beta_condition",
    "alignment_of",
    "descend_witness",
    "fixed_point_oracle",
    "finite_word_oracle",
    "verify_theorem",
    "THEOREMS",
]


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    details: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if not self.passed and not self.details:
            raise ValueError("a failed check must carry evidence")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


@dataclass(frozen=True)
class CheckReport:
    variant: str
    period_bound: int
    checks: tuple[CheckOutcome, ...]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckOutcome:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[CheckOutcome]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "period_bound": self.period_bound,
            "checks": [c.to_json() for c in self.checks],
            "overall": self.overall,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def summary(self) -> str:
        lines = [f"Theorem {self.variant} (periods <= {self.period_bound})"]
        for c in self.checks:
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}")
        lines.append(f"  overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _digits(x: bytes) -> str:
    return "".join(map(str, x))


def consecutive(a: int, b: int, modulus: int) -> bool:
    return (b - a) % modulus in (1, modulus - 1)


# -- synchronization ----------------------------------------------------------

def check_synchronization(spec: FixedPointSpec, f: UniformMorphism | None, marker: WordLike,
                          allowed_residues: Iterable[int], name: str = "synchronization") -> CheckOutcome:
    """Marker occurs, and only at the allowed residues modulo the image length."""
    marker = as_word(marker)
    if len(marker) == 0:
        raise ValueError("marker must be non-empty")
    allowed = sorted(set(allowed_residues))
    profile = offset_profile(spec, f, len(marker))
    residues = sorted(profile.residues(marker.letters))
    details = {"marker": str(marker), "modulus": profile.modulus, "allowed": allowed, "residues": residues}
    if not residues:
        return CheckOutcome(name, False, {**details, "reason": "marker-absent"})
    if not set(residues) <= set(allowed):
        return CheckOutcome(name, False, {**details, "reason": "residue-mismatch"})
    return CheckOutcome(name, True, details)


def check_offset_uniqueness(spec: FixedPointSpec, f: UniformMorphism | None, L: int,
                            name: str = "offset_uniqueness") -> CheckOutcome:
    profile = offset_profile(spec, f, L)
    bad = profile.ambiguous()
    details = {"length": L, "modulus": profile.modulus, "factors": len(profile.entries),
               "ambiguous": {_digits(x): sorted(r)
                             for x, r in sorted(bad.items())}}
    return CheckOutcome(name, not bad, details)


def check_marker_coverage(spec: FixedPointSpec, f: UniformMorphism, marker: WordLike, L: int,
                          name: str = "marker_coverage") -> CheckOutcome:
    """Every length-``L`` factor of the image word contains the marker."""
    marker = as_word(marker, f.codomain_size)
    if L < len(marker):
        raise ValueError("L must be at least the marker length")
    S = image_factor_set(spec, f, L)
    missing = sorted(x for x in S.factors if marker.letters not in x)
    details = {"marker": str(marker), "length": L, "factors": len(S), "without_marker": len(missing)}
    if missing:
        details["first_offender"] = str(Word(missing[0], f.codomain_size))
    return CheckOutcome(name, not missing, details)


def check_successor_property(spec: FixedPointSpec, allowed_differences: Iterable[int], modulus: int,
                             name: str = "successor_property") -> CheckOutcome:
    """Every two-letter factor ``ab`` has ``(b - a) mod modulus`` in the allowed set.

    The details also report the corollary used for exception pairs: whether
    any two letters that follow a common letter are consecutive.
    """
    allowed = sorted({d % modulus for d in allowed_differences})
    pairs = sorted(two_letter_factors(spec).factors)
    offending = [(a, b) for a, b in pairs if (b - a) % modulus not in allowed]
    followers: dict[int, list[int]] = {}
    for a, b in pairs:
        followers.setdefault(a, []).append(b)
    co_followers = sorted({(x, y) for bs in followers.values() for x, y in combinations(sorted(bs), 2)})
    details = {
        "modulus": modulus,
        "allowed": allowed,
        "pairs": [f"{a}{b}" for a, b in pairs],
        "followers": {str(a): bs for a, bs in sorted(followers.items())},
        "co_followers_consecutive": all(consecutive(x, y, modulus) for x, y in co_followers),
    }
    if offending:
        details["offending"] = [f"{a}{b}" for a, b in offending]
    return CheckOutcome(name, not offending, details)


# -- prefix / suffix distinctness ---------------------------------------------

def _lcp(x: bytes, y: bytes) -> int:
    n = 0
    for a, b in zip(x, y):
        if a != b:
            break
        n += 1
    return n


def _pairs(pairs) -> frozenset[tuple[int, int]]:
    return frozenset(tuple(sorted(p)) for p in pairs)


@dataclass(frozen=True)
class DistinctnessTable:
    morphism: UniformMorphism
    lcp: tuple[tuple[int, ...], ...]
    lcs: tuple[tuple[int, ...], ...]
    alpha: int
    beta: int
    prefix_exceptions: frozenset[tuple[int, int]]
    suffix_exceptions: frozenset[tuple[int, int]]

    def violations(self) -> list[dict]:
        out = []
        n = self.morphism.domain_size
        for kind, matrix, bound, exceptions in (
            ("prefix", self.lcp, self.alpha, self.prefix_exceptions),
            ("suffix", self.lcs, self.beta, self.suffix_exceptions),
        ):
            for a, b in combinations(range(n), 2):
                value = matrix[a][b]
                if (a, b) in exceptions and value < bound:
                    out.append({"kind": kind, "pair": [a, b], "value": value,
                                "problem": f"listed as exception but common {kind} < {bound}"})
                elif (a, b) not in exceptions and value >= bound:
                    out.append({"kind": kind, "pair": [a, b], "value": value,
                                "problem": f"common {kind} >= {bound} but not listed as exception"})
            for a, b in exceptions:
                if not (0 <= a < b < n):
                    out.append({"kind": kind, "pair": [a, b], "value": None, "problem": "not a letter pair"})
        return out

    @property
    def valid(self) -> bool:
        return not self.violations()

    def require_valid(self) -> None:
        bad = self.violations()
        if bad:
            v = bad[0]
            raise PremiseError(f"distinctness claim fails for pair {v['pair']}: {v['problem']} (value {v['value']})")


def build_distinctness_table(f: UniformMorphism, alpha: int, beta: int,
                             prefix_exceptions=(), suffix_exceptions=()) -> DistinctnessTable:
    if not (1 <= alpha <= f.q and 1 <= beta <= f.q):
        raise ValueError("alpha and beta must lie in [1, q]")
    ims = f.images
    n = f.domain_size
    lcp = tuple(tuple(_lcp(ims[a], ims[b]) for b in range(n)) for a in range(n))
    lcs = tuple(tuple(_lcp(ims[a][::-1], ims[b][::-1]) for b in range(n)) for a in range(n))
    return DistinctnessTable(f, lcp, lcs, alpha, beta, _pairs(prefix_exceptions), _pairs(suffix_exceptions))


def check_distinctness_table(table: DistinctnessTable, name: str = "distinctness_table") -> CheckOutcome:
    n = table.morphism.domain_size

    def max_off(matrix, exceptions):
        vals = [matrix[a][b] for a, b in combinations(range(n), 2) if (a, b) not in exceptions]
        return max(vals, default=0)

    details = {
        "alpha": table.alpha,
        "beta": table.beta,
        "prefix_exceptions": sorted(list(p) for p in table.prefix_exceptions),
        "suffix_exceptions": sorted(list(p) for p in table.suffix_exceptions),
        "max_lcp_outside_exceptions": max_off(table.lcp, table.prefix_exceptions),
        "max_lcs_outside_exceptions": max_off(table.lcs, table.suffix_exceptions),
    }
    bad = table.violations()
    if bad:
        details["violations"] = bad
    return CheckOutcome(name, not bad, details)


def check_exception_pairs_nonconsecutive(table: DistinctnessTable, spec: FixedPointSpec,
                                         name: str = "exception_pairs_nonconsecutive") -> CheckOutcome:
    modulus = spec.alphabet_size
    pairs = sorted(table.prefix_exceptions | table.suffix_exceptions)
    bad = [list(p) for p in pairs if consecutive(p[0], p[1], modulus)]
    details = {"modulus": modulus, "pairs": [list(p) for p in pairs],
               "differences": [(b - a) % modulus for a, b in pairs]}
    if bad:
        details["consecutive"] = bad
    return CheckOutcome(name, not bad, details)


def check_alpha_beta_condition(alpha: int, beta: int, q: int, name: str = "alpha_beta") -> CheckOutcome:
    total = alpha + beta
    return CheckOutcome(name, total <= q + 1,
                        {"alpha": alpha, "beta": beta, "q": q, "sum": total, "bound": q + 1,
                         "tight": total == q + 1})


# -- witness descent -----------------------------------------------------------

class DescentError(ValueError):
    pass


class MisalignmentError(DescentError):
    """Period not a multiple of q, or u and v sit at different residues."""


class AmbiguousExtensionError(DescentError):
    """A fragment extends to two consecutive letters: a premise is broken."""


class InconsistentWitnessError(DescentError):
    """The base oracle rejects the descended factor, or a block is not an image."""


class PremiseError(DescentError):
    """The distinctness table or the alpha + beta bound does not hold."""


@dataclass(frozen=True)
class AlignmentInfo:
    x_u: int
    x_v: int
    q: int

    def __post_init__(self):
        if not (0 <= self.x_u < self.q and 0 <= self.x_v < self.q):
            raise ValueError("residues must lie in [0, q)")


def alignment_of(witness: HalfFlipWitness, q: int) -> AlignmentInfo:
    """Residues of ``u`` and ``v`` read off the witness positions."""
    return AlignmentInfo(witness.pos_uv % q, witness.pos_vu % q, q)


FactorOracle = Callable[[Word], bool]


def fixed_point_oracle(spec: FixedPointSpec) -> FactorOracle:
    """Membership in the exact factor set of the fixed point."""
    def oracle(w: Word) -> bool:
        return len(w) == 0 or w.letters in factor_set_descent(spec, len(w)).factors
    return oracle


def finite_word_oracle(host: WordLike) -> FactorOracle:
    letters = as_word(host).letters
    return lambda w: w.letters in letters


def descend_witness(f: UniformMorphism, table: DistinctnessTable, base_factor_oracle: FactorOracle,
                    witness: HalfFlipWitness, alignment: AlignmentInfo,
                    modulus: int | None = None) -> HalfFlipWitness:
    """Turn a half-flip of period ``p`` in ``f(W)`` into one of period ``p/q`` in ``W``.

    Positions in ``witness`` refer to a host ``f(B)`` read from offset 0; the
    returned positions refer to ``B``. With ``x = x_u = x_v`` the halves split
    as ``u = u' f(U) u''`` with ``|u''| = x``. For ``x >= alpha`` the fragments
    ``u''``, ``v''`` are extended forward to whole images ``f(mu)``, ``f(nu)``;
    otherwise ``u'``, ``v'`` are extended backward. Letters sharing a long
    prefix or suffix are told apart by the successor relation modulo
    ``modulus`` (default: the domain size).
    """
    q = f.q
    p = witness.period
    if alignment.q != q:
        raise MisalignmentError(f"alignment modulus {alignment.q} differs from q={q}")
    if p % q:
        raise MisalignmentError(f"period {p} is not a multiple of q={q}")
    if alignment.x_u != alignment.x_v:
        raise MisalignmentError(f"x_u={alignment.x_u} differs from x_v={alignment.x_v}")
    x = alignment.x_u
    if witness.pos_uv % q != x or witness.pos_vu % q != x:
        raise MisalignmentError("witness positions disagree with the declared residues")
    if table.morphism.images != f.images:
        raise PremiseError("distinctness table belongs to a different morphism")
    table.require_valid()
    if table.alpha + table.beta > q + 1:
        raise PremiseError(f"alpha + beta = {table.alpha + table.beta} exceeds q + 1 = {q + 1}")
    modulus = f.domain_size if modulus is None else modulus
    inverse = {im: a for a, im in enumerate(f.images)}
    base_size = f.domain_size

    def decode(blocks: bytes) -> bytes:
        out = bytearray()
        for i in range(0, len(blocks), q):
            a = inverse.get(blocks[i:i + q])
            if a is None:
                raise InconsistentWitnessError(f"block at offset {i} is not an image of {f.name or 'f'}")
            out.append(a)
        return bytes(out)

    def extend(fragment: bytes, forward: bool, context: bytes) -> int:
        if forward:
            cands = [a for a, im in enumerate(f.images) if im.startswith(fragment)]
        else:
            cands = [a for a, im in enumerate(f.images) if im.endswith(fragment)]
        if not cands:
            raise InconsistentWitnessError(f"fragment {_digits(fragment)} is not part of any image")
        if len(cands) == 1:
            return cands[0]
        for a, b in combinations(cands, 2):
            if consecutive(a, b, modulus):
                raise AmbiguousExtensionError(
                    f"fragment {_digits(fragment)} extends to consecutive letters {a} and {b}")
        if context:
            def fits(a: int) -> bool:
                w = context + bytes([a]) if forward else bytes([a]) + context
                return base_factor_oracle(Word(w, base_size))
            cands = [a for a in cands if fits(a)]
        if not cands:
            raise InconsistentWitnessError(f"no extension of {_digits(fragment)} is a base factor")
        if len(cands) > 1:
            raise AmbiguousExtensionError(f"fragment {_digits(fragment)} extends to letters {cands}")
        return cands[0]

    u = witness.u.letters
    v = witness.v.letters
    if x == 0:
        base_uv = decode(u) + decode(v)
        pos_uv, pos_vu = witness.pos_uv // q, witness.pos_vu // q
    else:
        head = q - x
        U, V = decode(u[head:p - x]), decode(v[head:p - x])
        if x >= table.alpha:
            mu = extend(u[p - x:], True, U)
            nu = extend(v[p - x:], True, V)
            base_uv = U + bytes([mu]) + V + bytes([nu])
            pos_uv, pos_vu = (witness.pos_uv + head) // q, (witness.pos_vu + head) // q
        else:
            mu = extend(u[:head], False, U)
            nu = extend(v[:head], False, V)
            base_uv = bytes([mu]) + U + bytes([nu]) + V
            pos_uv, pos_vu = (witness.pos_uv - x) // q, (witness.pos_vu - x) // q
    result = HalfFlipWitness(p // q, Word(base_uv, base_size), pos_uv, pos_vu)
    for factor in (result.uv, result.vu):
        if not base_factor_oracle(factor):
            raise InconsistentWitnessError(f"base oracle rejects {factor}")
    return result


# -- theorem pipelines -----------------------------------------------------------

THEOREMS = {
    "1.1": "1-half-flips are 5-avoidable",
    "1.2": "2-half-flips are 3-avoidable",
    "1.3": "4-half-flips are 2-avoidable",
}


def _morphism_check(name: str, f: UniformMorphism, q: int, extra: dict | None = None) -> CheckOutcome:
    try:
        g = validate_morphism(f.to_json())
    except ValueError as exc:
        return CheckOutcome(name, False, {"error": str(exc)})
    ok = g.q == q and g.images == f.images
    return CheckOutcome(name, ok, {"q": g.q, "expected_q": q, "domain_size": g.domain_size,
                                   "codomain_size": g.codomain_size, **(extra or {})})


def _avoidance_check(name: str, f: UniformMorphism | None, k: int, P: int,
                     max_material: int) -> CheckOutcome:
    hit = infinite_halfflip_check(M_SPEC, f, k, P, max_material=max_material)
    details = {"word": "m^w(0)" if f is None else f"{f.name}(m^w(0))", "min_period": k,
               "max_period": P, "periods_checked": max(0, P - k + 1)}
    if hit is not None:
        details.update(period=hit.period, uv=str(hit.uv))
    return CheckOutcome(name, hit is None, details)


def _theorem_1_1(P: int, max_material: int) -> list[CheckOutcome]:
    table = build_distinctness_table(M, 68, 20, [(0, 3)], [(1, 4)])
    return [
        _morphism_check("morphism_m_valid", M, 95, {"c_length": len(C)}),
        check_synchronization(M_SPEC, None, C, {0}, name="synchronization_c"),
        check_successor_property(M_SPEC, {1, 2}, 5),
        check_distinctness_table(table, name="distinctness_table_m"),
        check_exception_pairs_nonconsecutive(table, M_SPEC, name="exception_pairs_nonconsecutive_m"),
        check_alpha_beta_condition(68, 20, 95, name="alpha_beta_m"),
        _avoidance_check("halfflip_free_m", None, 1, P, max_material),
    ]


def _image_checks(f: UniformMorphism) -> list[CheckOutcome]:
    tag = f.name
    return [
        _morphism_check(f"morphism_{tag}_valid", f, 7),
        check_distinctness_table(build_distinctness_table(f, 4, 4), name=f"distinctness_table_{tag}"),
        check_alpha_beta_condition(4, 4, 7, name=f"alpha_beta_{tag}"),
    ]


def verify_theorem(variant: str, P: int = 500, max_material: int = DEFAULT_MAX_MATERIAL) -> CheckReport:
    """Run every computational premise of one theorem item.

    Items 1.2 and 1.3 reduce to 1.1, so their reports include its checks.
    """
    variant = str(variant)
    if variant not in THEOREMS:
        raise ValueError(f"unknown theorem variant {variant!r}; expected one of {sorted(THEOREMS)}")
    if P < 0:
        raise ValueError("period bound must be non-negative")
    checks = _theorem_1_1(P, max_material)
    if variant == "1.2":
        checks += _image_checks(F3)
        repaired = build_distinctness_table(F3, 4, 4, (), [(1, 4)])
        checks += [
            check_distinctness_table(repaired, name="distinctness_table_f3_suffix_exception_14"),
            check_exception_pairs_nonconsecutive(repaired, M_SPEC, name="exception_pairs_nonconsecutive_f3"),
            check_marker_coverage(M_SPEC, F3, "20", 8, name="marker_coverage_f3_20_L8"),
            check_synchronization(M_SPEC, F3, "20", {6}, name="synchronization_f3_20"),
            check_offset_uniqueness(M_SPEC, F3, 8, name="offset_uniqueness_f3_L8"),
            _avoidance_check("halfflip_free_f3", F3, 2, P, max_material),
        ]
    elif variant == "1.3":
        checks += _image_checks(F2)
        checks += [
            check_offset_uniqueness(M_SPEC, F2, 6, name="offset_uniqueness_f2_L6"),
            check_offset_uniqueness(M_SPEC, F2, 9, name="offset_uniqueness_f2_L9"),
            _avoidance_check("halfflip_free_f2", F2, 4, P, max_material),
        ]
    return CheckReport(variant, P, tuple(checks))
