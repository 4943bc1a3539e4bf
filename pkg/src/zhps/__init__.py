"""ZH-diagrams and pure path-sums for Toffoli+Hadamard circuits.

Both representations share one model: spiders are path variables and
H-boxes are phase-polynomial terms. Rewrites on either side delete
variables with exactly tracked scalars; a dense oracle checks everything.
"""

from .numeric import Phase, ScalarFactor
from .pathsum import (BoolPoly, PhasePoly, PurePathSum, adjoint_pathsum, canonicalize,
                      compose_pathsums, identity_pathsum, lift, purify, scale_lift, substitute)
from .diagram import (Diagram, HLabel, RawDiagram, cnot_zh, compose_par, compose_seq,
                      hypergraph_violations, iso_equal, normalize)
from .translate import TranslationError, pathsum_to_zh, zh_to_pathsum
from .oracle import Mode, OracleCapExceeded, compare, eval_diagram, eval_pathsum
from .circuits import (Circuit, Gate, adjoint, circuit_to_diagram, circuit_to_pathsum,
                       gate_to_diagram, parse_circuit)
from .rules import RewriteTrace, RuleError, simplify, simplify_diagram
from .verify import Verdict, verify

__version__ = "0.1.0"
