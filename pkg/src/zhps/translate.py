"""The correspondence between hypergraph-like diagrams and pure path-sums.

Spider ``s`` becomes path variable ``s``; an H-box labelled
``exp(2 pi i alpha)`` on spiders ``J`` becomes the term ``alpha * prod_{j in J} x_j``.
"""

from __future__ import annotations

from .diagram import Diagram, HLabel
from .numeric import Phase
from .pathsum import PhasePoly, PurePathSum

__all__ = ["TranslationError", "zh_to_pathsum", "pathsum_to_zh"]


class TranslationError(ValueError):
    pass


def zh_to_pathsum(d: Diagram, inexact: bool = False) -> PurePathSum:
    """Evaluate a hypergraph-like diagram into a pure path-sum.

    H-boxes with general complex labels are accepted only if they have unit
    modulus. Labels that sit on a rational multiple of a full turn become
    exact phases; any other angle needs ``inexact`` and stays a float.
    """
    terms = {}
    for h, (lab, nb) in sorted(d.hboxes.items()):
        if lab.is_phase:
            phase = lab.phase
        else:
            phase = lab.as_phase()
            if phase is None:
                raise TranslationError(f"H-box {h} has label {lab.value!r} of modulus != 1")
            if not phase.exact and not inexact:
                raise TranslationError(f"H-box {h} has a label at an irrational angle {lab.value!r}; "
                                       "pass inexact=True to accept it as a float phase")
        if phase.is_zero():
            raise TranslationError(f"H-box {h} has label 1; normalize the diagram first")
        if nb in terms:
            raise TranslationError(f"H-boxes share neighbours {sorted(nb)}; normalize first")
        terms[nb] = phase
    return PurePathSum(d.spiders, d.inputs, d.outputs, PhasePoly(terms), d.scalar)


def pathsum_to_zh(e: PurePathSum) -> Diagram:
    """Rebuild the diagram: one spider per variable, one H-box per monomial."""
    boxes = {i: (HLabel(phase=c), m) for i, (m, c) in enumerate(e.phi.sorted_items())}
    return Diagram(e.vars, boxes, e.inputs, e.outputs, e.scalar)
