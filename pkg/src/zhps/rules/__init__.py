from .trace import RewriteStep, RewriteTrace
from .pathsum_rules import (Match, RuleError, apply_case, apply_elim, apply_hh, apply_omega,
                            match_case, match_elim, match_hh, match_omega)
from .graphical import (case_hyper_pivot, fourier_hyper_pivot, fourier_transform,
                        fuse_hadamard_wire, hyper_local_complement, hyper_pivot,
                        remove_isolated)
from .strategy import DEFAULT_POLICY, simplify, simplify_diagram
