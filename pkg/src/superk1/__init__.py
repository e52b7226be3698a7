"""Exact arithmetic on y^m = t^n + 1 and a K_1 element on C x C whose boundary at 3 is the Frobenius graph."""

__version__ = "0.1.0"

from .fields import (QQ, FieldElement, FieldError, cyclotomic_field, finite_field, make_field,  # noqa: E402
                     prime_field, root_of_unity_field)
from .polynomials import (Poly, PolyError, Relation, UPoly, curve_relations, eisenstein_check,  # noqa: E402
                          normal_form, resultant)
from .factor import factor_over_finite_field, is_irreducible  # noqa: E402
from .curve import (INFINITY, ClosedPoint, Curve, CurveError, DivisorOnCurve, RationalFunction,  # noqa: E402
                    count_points, frobenius_charpoly, infinity_valuations, make_curve,
                    order_of_vanishing, principal_divisor, reduce_mod_p, special_set_S)
from .jacobian import (Jacobian, JacobianError, MumfordDivisor, TorsionCertificate, class_of,  # noqa: E402
                       class_order, jacobian_order, torsion_certificate)
from .correspondence import (ComponentLabel, Correspondence, build_D, check_infinity_support,  # noqa: E402
                             decompose_D_mod_p, irreducibility_mod_l, ord_g_along_components)
from .k1_element import (BoundaryCycle, K1Chain, SurfacePoint, ZeroCycleOnSurface,  # noqa: E402
                         assemble_sigma, boundary_at_prime, divisor_of_g, total_divisor,
                         verify_theorem_2_3)

__all__ = [
    "QQ", "FieldElement", "FieldError", "cyclotomic_field", "finite_field", "make_field", "prime_field",
    "root_of_unity_field", "Poly", "PolyError", "Relation", "UPoly", "curve_relations", "eisenstein_check",
    "normal_form", "resultant", "factor_over_finite_field", "is_irreducible", "INFINITY", "ClosedPoint",
    "Curve", "CurveError", "DivisorOnCurve", "RationalFunction", "count_points", "frobenius_charpoly",
    "infinity_valuations", "make_curve", "order_of_vanishing", "principal_divisor", "reduce_mod_p",
    "special_set_S", "Jacobian", "JacobianError", "MumfordDivisor", "TorsionCertificate", "class_of",
    "class_order", "jacobian_order", "torsion_certificate", "ComponentLabel", "Correspondence", "build_D",
    "check_infinity_support", "decompose_D_mod_p", "irreducibility_mod_l", "ord_g_along_components",
    "BoundaryCycle", "K1Chain", "SurfacePoint", "ZeroCycleOnSurface", "assemble_sigma",
    "boundary_at_prime", "divisor_of_g", "total_divisor", "verify_theorem_2_3",
]
