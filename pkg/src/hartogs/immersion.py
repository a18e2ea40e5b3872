"""Existence decisions for Kahler immersions into the complex space forms.

The Hartogs-domain verdicts reduce to facts about the base domain:

* complex Euclidean space: exists (at any scale) iff the base immerses
  into some C^N;
* complex projective space at scale h: exists iff the base at every shifted
  scale h + s, s a nonnegative integer, immerses into CP^infinity;
* complex hyperbolic space at scale h: exists iff the base at scale h
  immerses into some CH^N and 0 < h <= 1. For h > 1 the pure-fiber blocks of
  degree 2 acquire a negative entry for every base, so existence fails
  outright.

No finite-dimensional target ever admits an immersion: the pure-fiber
coefficient entries stay strictly positive at every degree for the Euclidean
and projective forms, so the resolvability rank grows past any candidate N.

Base facts follow a lemma lattice: a CH immersion of the base forces a
C^infinity one, and a C^infinity one forces CP^infinity at every scale.
Catalog bases carry derived facts; anything else must be user supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .domains import BaseDomainSpec, DomainKind, HartogsSpec
from .errors import CapabilityError, HartogsError
from .series import Form, resolvability


class Answer(str, Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"
    UNKNOWN = "unknown"


YES = "yes"
NO = "no"
UNKNOWN = "unknown"
_FACT_VALUES = (YES, NO, UNKNOWN)


class ImmersionTarget(str, Enum):
    C_FINITE = "C_finite"
    C_INFINITE = "C_infinite"
    CP_FINITE = "CP_finite"
    CP_INFINITE = "CP_infinite"
    CH_FINITE = "CH_finite"
    CH_INFINITE = "CH_infinite"

    @property
    def finite(self) -> bool:
        return self.value.endswith("_finite")

    @property
    def form(self) -> Form:
        name = self.value.split("_")[0]
        return {"C": Form.EUCLIDEAN, "CP": Form.PROJECTIVE, "CH": Form.HYPERBOLIC}[name]

    @classmethod
    def parse(cls, text: str) -> "ImmersionTarget":
        cleaned = text.strip().replace("-", "_")
        if cleaned in ("C", "CP", "CH"):
            cleaned += "_infinite"
        try:
            return cls(cleaned)
        except ValueError:
            raise ValueError(
                f"unknown target {text!r}; expected C, CP, CH optionally "
                "suffixed with -finite or -infinite"
            ) from None


@dataclass(frozen=True)
class BaseImmersionFacts:
    """Immersion facts about the base domain, closed under the lemma lattice.

    ``projective`` and ``hyperbolic`` map a scale h to yes/no/unknown;
    ``projective`` already quantifies over all nonnegative integer shifts of
    h. A yes Euclidean fact upgrades every projective fact; a no Euclidean
    fact forces every hyperbolic fact to no.
    """

    euclidean: str
    projective: Callable[[float], str] = field(repr=False)
    hyperbolic: Callable[[float], str] = field(repr=False)
    provenance: str = "user_supplied"

    def __post_init__(self):
        if self.euclidean not in _FACT_VALUES:
            raise ValueError(f"euclidean fact must be one of {_FACT_VALUES}")

    def projective_all_shifts(self, h: float) -> str:
        if self.euclidean == YES:
            return YES
        value = self.projective(h)
        _check_fact(value)
        return value

    def hyperbolic_at(self, h: float) -> str:
        value = self.hyperbolic(h)
        _check_fact(value)
        if value == YES and self.euclidean == NO:
            raise HartogsError(
                "inconsistent facts: a hyperbolic immersion of the base "
                "forces a Euclidean one"
            )
        if self.euclidean == NO:
            return NO
        return value


def _check_fact(value: str):
    if value not in _FACT_VALUES:
        raise ValueError(f"fact values must be one of {_FACT_VALUES}")


def constant_facts(euclidean: str, projective: str, hyperbolic: str, provenance="user_supplied") -> BaseImmersionFacts:
    """Facts with scale-independent projective / hyperbolic verdicts."""
    for v in (euclidean, projective, hyperbolic):
        _check_fact(v)
    return BaseImmersionFacts(
        euclidean=euclidean,
        projective=lambda h: projective,
        hyperbolic=lambda h: hyperbolic,
        provenance=provenance,
    )


def catalog_facts(base: BaseDomainSpec) -> BaseImmersionFacts:
    """Derived facts for the catalog bases.

    Ball-like bases immerse into C^infinity (all expansion coefficients of
    -mu log(1 - t) are positive) and into CH at scale h exactly when
    h mu <= 1 (the coefficients of 1 - (1-t)^(h mu) stay nonnegative).
    A polydisc with two or more factors picks up a negative mixed
    coefficient in 1 - phi^h for every h, and the flat base does so in
    1 - exp(-h mu t); neither ever immerses into CH. Projective immersions
    exist at every scale throughout.
    """
    kind = base.kind
    if kind is DomainKind.CARTAN_TYPE_I and min(base.shape) >= 2:
        raise CapabilityError(
            "no derived immersion facts for rank >= 2 matrix bases; "
            "supply facts explicitly"
        )
    if kind is DomainKind.FOCK:
        return BaseImmersionFacts(
            euclidean=YES,
            projective=lambda h: YES,
            hyperbolic=lambda h: NO,
            provenance="catalog",
        )
    if kind is DomainKind.POLYDISC and base.factor_count >= 2:
        return BaseImmersionFacts(
            euclidean=YES,
            projective=lambda h: YES,
            hyperbolic=lambda h: NO,
            provenance="catalog",
        )
    # disc / ball / rank-one matrix ball with exponent mu
    mu = base.exponents[0]
    return BaseImmersionFacts(
        euclidean=YES,
        projective=lambda h: YES,
        hyperbolic=lambda h, mu=mu: YES if h * mu <= 1.0 + 1e-15 else NO,
        provenance="catalog",
    )


@dataclass(frozen=True)
class ImmersionVerdict:
    target: ImmersionTarget
    h: float
    answer: Answer
    rule: str
    provenance: str

    def __post_init__(self):
        if self.target.finite and self.answer is Answer.EXISTS:
            raise HartogsError("finite-dimensional targets never admit immersions")


_RULE_FINITE = "finite-target-exclusion: resolvability rank exceeds every finite N"
_RULE_EUCLIDEAN = "euclidean-criterion: base immerses into some C^N"
_RULE_PROJECTIVE = "projective-shift-criterion: base immerses at all shifted scales"
_RULE_HYPERBOLIC = "hyperbolic-criterion: base immerses at scale h and 0 < h <= 1"
_RULE_SCALE_BOUND = "hyperbolic-scale-bound: degree-2 fiber block negative for h > 1"
_RULE_MISSING = "missing base fact"


def decide(
    spec: HartogsSpec,
    target: ImmersionTarget,
    h: float | None = None,
    facts: BaseImmersionFacts | None = None,
) -> ImmersionVerdict:
    """Existence verdict for one target space form at scale h."""
    target = ImmersionTarget(target)
    h = spec.scale if h is None else float(h)
    if h <= 0:
        raise ValueError("scale h must be positive")
    facts = catalog_facts(spec.base) if facts is None else facts

    def verdict(answer, rule):
        return ImmersionVerdict(
            target=target, h=h, answer=answer, rule=rule, provenance=facts.provenance
        )

    if target.finite:
        return verdict(Answer.NOT_EXISTS, _RULE_FINITE)
    if target is ImmersionTarget.C_INFINITE:
        fact = facts.euclidean
        rule = _RULE_EUCLIDEAN
    elif target is ImmersionTarget.CP_INFINITE:
        fact = facts.projective_all_shifts(h)
        rule = _RULE_PROJECTIVE
    else:
        if h > 1.0 + 1e-15:
            return verdict(Answer.NOT_EXISTS, _RULE_SCALE_BOUND)
        fact = facts.hyperbolic_at(h)
        rule = _RULE_HYPERBOLIC
    if fact == YES:
        return verdict(Answer.EXISTS, rule)
    if fact == NO:
        return verdict(Answer.NOT_EXISTS, rule)
    return verdict(Answer.UNKNOWN, _RULE_MISSING)


@dataclass(frozen=True)
class CrossCheckReport:
    verdict: ImmersionVerdict
    all_psd: bool
    rank_lower_bound: int
    first_failure: tuple | None
    truncation_degree: int
    agreement: str


def cross_check(
    spec: HartogsSpec,
    target: ImmersionTarget,
    h: float | None = None,
    truncation_degree: int = 10,
    facts: BaseImmersionFacts | None = None,
) -> CrossCheckReport:
    """Consistency of :func:`decide` with the truncated resolvability sweep.

    An existence verdict must see every block PSD; a sign-obstructed
    non-existence verdict (infinite targets) must see a failing block at
    finite degree. Finite-target exclusions rest on rank growth and only
    report the accumulated rank. Contradictions raise hard errors naming the
    block.
    """
    target = ImmersionTarget(target)
    h = spec.scale if h is None else float(h)
    v = decide(spec, target, h, facts)
    res = resolvability(target.form, spec, h=h, truncation_degree=truncation_degree)
    failure = None
    if res.first_failure is not None:
        failure = (
            res.first_failure.total_degree,
            res.first_failure.fiber_degree,
            res.first_failure.min_eigenvalue,
        )
    if v.answer is Answer.EXISTS:
        if not res.all_psd:
            raise HartogsError(
                f"contradiction: {target.value} immersion claimed but block "
                f"(i={failure[0]}, sigma={failure[1]}) is not PSD"
            )
        agreement = "exists-all-psd"
    elif v.answer is Answer.UNKNOWN:
        agreement = "unknown-exempt"
    elif target.finite:
        agreement = "finite-rank-evidence"
    else:
        if res.all_psd:
            raise HartogsError(
                f"contradiction: {target.value} immersion excluded but every "
                f"block through degree {truncation_degree} is PSD"
            )
        agreement = "obstruction-found"
    return CrossCheckReport(
        verdict=v,
        all_psd=res.all_psd,
        rank_lower_bound=res.rank_lower_bound,
        first_failure=failure,
        truncation_degree=truncation_degree,
        agreement=agreement,
    )


# ---------------------------------------------------------------------------
# The summary verdict table
# ---------------------------------------------------------------------------

_ROW_FACTS = {
    # Sufficient condition rows: what is assumed about the base.
    "A": BaseImmersionFacts(
        euclidean=YES,
        projective=lambda h: YES,
        hyperbolic=lambda h: UNKNOWN,
        provenance="hypothesis-A: base immerses into C^N",
    ),
    "B": BaseImmersionFacts(
        euclidean=NO,
        projective=lambda h: YES,
        hyperbolic=lambda h: NO,
        provenance="hypothesis-B: base immerses projectively at all shifts only",
    ),
    "C": BaseImmersionFacts(
        euclidean=YES,
        projective=lambda h: YES,
        hyperbolic=lambda h: YES,
        provenance="hypothesis-C: base immerses hyperbolically, 0 < h <= 1",
    ),
}


def table_one(h: float = 1.0) -> dict:
    """The 3 x 6 existence matrix over the hypothesis rows A, B, C.

    Row A assumes only a Euclidean immersion of the base (the hyperbolic
    fact is left unknown, and so is the CH^infinity cell); row B assumes the
    projective shift condition alone; row C a hyperbolic immersion at scale
    h <= 1. Finite columns are excluded everywhere by rank growth.
    """
    spec = HartogsSpec(BaseDomainSpec.disc(1.0), 1)  # carrier only
    out = {}
    for row, facts in _ROW_FACTS.items():
        out[row] = {
            t.value: decide(spec, t, h, facts).answer.value for t in ImmersionTarget
        }
    return out
