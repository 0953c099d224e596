"""Exact computations in phi-deformed shuffle algebras over Q(q).

Words, deformation laws, the deformed shuffle product and its coproduct,
Eulerian projectors, PBW and dual bases, and Schützenberger's factorization
with local coordinates.
"""

__version__ = "0.1.0"

from .scalars import ONE, Q, ZERO, PoleError, Scalar, as_scalar
from .words import (EMPTY, STANDARD, Alphabet, Letter, WordError, cfl_factorization,
                    format_word, is_lyndon, lyndon_up_to, parse_alphabet, parse_word,
                    standard_factorization)
from .ncpoly import (NCPoly, TensorPoly, TruncSeries, bracket, conc_mul, delta_conc, pairing,
                     series_exp, series_log, series_log_exp)
from .textio import ParseError, format_poly, parse_poly, parse_scalar
from .laws import (CATALOG, FiniteTableLaw, LawError, LawPropertyError, LawReport, PhiLaw,
                   WeightAdditiveLaw, analyze_law, builtin_law, gamma_word, law_from_doc,
                   min_shuffle, muffle_sample, phi_apply, q_infiltration, q_shuffle, q_stuffle,
                   quasi_shuffle, semigroup_shuffle, shuffle)
from .products import (Classification, classify_element, delta_phi, delta_plus, phi_shuffle,
                       phi_shuffle_power)
from .projectors import (CoeffSeq, antipode, hausdorff, phi_of_series, pi1, pi_n,
                         word_expansion_identity)
from .bases import (BasisTable, GramReport, PsiExpr, build_basis_table, gram_check,
                    phi_pi1_map, pi_element, psi_pi_eval, sigma_element)
from .factorization import (CoordinateChart, NotGroupLike, diagonal, local_coordinates,
                            reconstruct, schutzenberger)
