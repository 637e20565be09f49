"""Finite left cancellative small categories, groupoid actions on them, their
Zappa-Szép products and the properties of the associated tight groupoids."""

from .action import (CategorySystem, GroupoidAction, PartialIso, extend_action, is_pseudo_free,
                     trivial_system, validate_action, validate_category_cocycle)
from .bundle import Bundle, build, load, loads
from .category import (FiniteCategory, check_cancellation, equivalent, initial_segments, invertibles,
                       is_exhaustive, is_finitely_aligned, minimal_common_extensions, validate_category)
from .checks import PROPERTIES, CheckResult, run_check
from .description import CategoryDescription, parse, read, serialize
from .errors import (BadParams, BeyondHorizon, DomainError, HorizonError, LcscError, NoFactorization,
                     NoJoin, NotComposable, ParseError, PreconditionUnverified, TooLarge,
                     UnknownProperty, ValidationError)
from .factorization import (check_R_condition, factorize, find_atoms, transversal,
                            verify_zs_decomposition)
from .filters import Filter, enumerate_filters, filter_transfer, principal
from .fixtures import FIXTURES, generate_fixture, random_system
from .germs import (Germ, SElement, act_on_filter, compose_germs, degree_cocycle, element, germ,
                    germ_equal, invert_germ, tight_germs, unit_germ)
from .length import LengthAssignment, check_wfp, is_action_free, validate_length
from .monoid import FreeMonoid, NaturalPowers, NumericalMonoid, monoid_from_spec
from .tight import (check_hausdorff, check_minimality, check_star_property, check_topological_freeness,
                    kernel_and_tg, simplicity_condition)
from .verdict import Report, Verdict
from .zappa_szep import ZSCategory, build_product, check_preservation, zs_invertibles

__version__ = "0.1.0"

__all__ = [
    "CategorySystem",
    "GroupoidAction",
    "PartialIso",
    "extend_action",
    "is_pseudo_free",
    "trivial_system",
    "validate_action",
    "validate_category_cocycle",
    "Bundle",
    "build",
    "load",
    "loads",
    "FiniteCategory",
    "check_cancellation",
    "equivalent",
    "initial_segments",
    "invertibles",
    "is_exhaustive",
    "is_finitely_aligned",
    "minimal_common_extensions",
    "validate_category",
    "PROPERTIES",
    "CheckResult",
    "run_check",
    "CategoryDescription",
    "parse",
    "read",
    "serialize",
    "BadParams",
    "BeyondHorizon",
    "DomainError",
    "HorizonError",
    "LcscError",
    "NoFactorization",
    "NoJoin",
    "NotComposable",
    "ParseError",
    "PreconditionUnverified",
    "TooLarge",
    "UnknownProperty",
    "ValidationError",
    "check_R_condition",
    "factorize",
    "find_atoms",
    "transversal",
    "verify_zs_decomposition",
    "Filter",
    "enumerate_filters",
    "filter_transfer",
    "principal",
    "FIXTURES",
    "generate_fixture",
    "random_system",
    "Germ",
    "SElement",
    "act_on_filter",
    "compose_germs",
    "degree_cocycle",
    "element",
    "germ",
    "germ_equal",
    "invert_germ",
    "tight_germs",
    "unit_germ",
    "LengthAssignment",
    "check_wfp",
    "is_action_free",
    "validate_length",
    "FreeMonoid",
    "NaturalPowers",
    "NumericalMonoid",
    "monoid_from_spec",
    "check_hausdorff",
    "check_minimality",
    "check_star_property",
    "check_topological_freeness",
    "kernel_and_tg",
    "simplicity_condition",
    "Report",
    "Verdict",
    "ZSCategory",
    "build_product",
    "check_preservation",
    "zs_invertibles",
    "__version__",
]
