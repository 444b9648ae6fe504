"""Exact Selberg/Jack/Weingarten engine for operator-norm ball moments.

Subpackages by layer: `exact` (rationals, Gamma products), `combinat`
(partitions, characters, pair partitions), `selberg` and `jack` (closed-form
integrals), `moments` (ensemble moments, exact asymptotics), `weingarten`
(entry moments, covariance structure), `oracle` (quadrature and samplers),
`verify` (the acceptance suite), `cli` (the `selmat` command).
"""

from .combinat import Partition, Permutation, partitions_of
from .exact import GammaProduct, PoleError, Rational, pochhammer, to_float
from .jack import SymPoly, jack_in_monomials, kadell_ratio, monomial_to_jack, principal_specialization
from .moments import EnsembleSpec, MomentReport, ensemble, ensemble_moments
from .selberg import SelbergParams, aomoto_general_ratio, aomoto_ratio, selberg_I0
from .weingarten import CovarianceReport, covariance_report, wg_orthogonal, wg_unitary

__version__ = "0.1.0"

__all__ = [
    "CovarianceReport",
    "EnsembleSpec",
    "GammaProduct",
    "MomentReport",
    "Partition",
    "Permutation",
    "PoleError",
    "Rational",
    "SelbergParams",
    "SymPoly",
    "aomoto_general_ratio",
    "aomoto_ratio",
    "covariance_report",
    "ensemble",
    "ensemble_moments",
    "jack_in_monomials",
    "kadell_ratio",
    "monomial_to_jack",
    "partitions_of",
    "pochhammer",
    "principal_specialization",
    "selberg_I0",
    "to_float",
    "wg_orthogonal",
    "wg_unitary",
    "__version__",
]
