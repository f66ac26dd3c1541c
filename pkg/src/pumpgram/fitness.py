"""Fitness of a hypothesis: the observed share of its basic strings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .earley import evidence_shape
from .grammar import Grammar
from .shape import ShapeVector, basic_string_set, grammar_shape


class FitnessInvariantError(ValueError):
    """ES exceeds GS at some length, so the vectors cannot come from one grammar."""


@dataclass(frozen=True)
class Fitness:
    numerator: int
    denominator: int

    @property
    def defined(self) -> bool:
        return self.denominator != 0

    @property
    def value(self) -> Optional[Fraction]:
        return Fraction(self.numerator, self.denominator) if self.denominator else None

    def __float__(self) -> float:
        if not self.denominator:
            return float("nan")
        return self.numerator / self.denominator

    def __str__(self) -> str:
        if not self.denominator:
            return "undefined"
        return str(self.value)


UNDEFINED = Fitness(0, 0)


def fitness(es: ShapeVector, gs: ShapeVector) -> Fitness:
    """Sum(ES) / Sum(GS) as an exact rational."""
    n = max(len(es), len(gs))
    for i in range(n):
        if es[i] > gs[i]:
            raise FitnessInvariantError(f"ES[{i}]={es[i]} exceeds GS[{i}]={gs[i]}")
    return Fitness(es.total, gs.total)


def grammar_fitness(g: Grammar, corpus) -> Fitness:
    es, _ = evidence_shape(g, corpus)
    return fitness(es, grammar_shape(g))


def as_fraction(t) -> Fraction:
    """Accepts Fractions, ints, floats and strings such as '49/51' or '0.9'."""
    if isinstance(t, Fraction):
        return t
    if isinstance(t, float):
        return Fraction(str(t))
    return Fraction(t)


def is_optimal(f: Fitness, t, predecessor: Optional[Fraction] = None) -> bool:
    """f >= t and the path through f does not increase in fitness.

    ``predecessor`` is the fitness of the optimal ancestor the path extends
    from; None (no optimum yet on this path) counts as 1.
    """
    if not f.defined:
        return False
    v = f.value
    pred = Fraction(1) if predecessor is None else as_fraction(predecessor)
    return v >= as_fraction(t) and v <= pred


def could_reach(basic_total: int, unseen: int, t) -> bool:
    """Whether a grammar with these basic-string counts can have fitness >= t.

    ``unseen`` counts basic strings missing from the corpus. The fitness is
    (total - unseen) / total, so the test is t * total <= total - unseen.
    """
    t = as_fraction(t)
    if basic_total == 0:
        return False
    return t * basic_total <= basic_total - unseen


def monotonicity_condition(g_sub: Grammar, g: Grammar, corpus: Sequence) -> bool:
    """Whether extending ``g_sub`` to ``g`` keeps fitness from rising.

    Compares the evidence the extension adds with the basic strings it adds:
    sum ES(dD|g) / sum dGS <= f(D|g_sub). Here dD holds the corpus strings
    that have a basic derivation under ``g`` but not under ``g_sub``. When
    the extension adds no basic strings the condition holds only if it adds
    no evidence either.
    """
    if not (set(g_sub.core) <= set(g.core) and set(g_sub.pos) <= set(g.pos)):
        raise ValueError("the first grammar must be a subgrammar of the second")
    b_sub = basic_string_set(g_sub)
    b = basic_string_set(g)
    data = {tuple(s) for s in corpus}
    delta_d = (b - b_sub) & data
    d_es = len(delta_d)
    d_gs = len(b) - len(b_sub)
    if d_gs == 0:
        return d_es == 0
    es_sub = len(b_sub & data)
    if not b_sub:
        # fitness of the subgrammar is undefined; only "no new evidence"
        # can be called non-increasing
        return d_es == 0
    return Fraction(d_es, d_gs) <= Fraction(es_sub, len(b_sub))
