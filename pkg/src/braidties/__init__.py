"""Exact Marin rings over monoid algebras of root subsystems."""

from .certificates import CheckResult
from .coxeter import CoxeterError, CoxeterSystem, GroupElement, InfiniteGroupError, UnsupportedSystemError, build_system
from .juyumaya import GroupHom, JuyumayaTriple, TieMap, catalog, check_JM, compose_pair, juyumaya_datum
from .marin import AlgebraElement, MarinAlgebra, MarinDatum, functorial_map
from .presentations import build_algebra, define_f_elements, emit_presentation, rescaling_check, verify_presentation
from .scalars import LaurentPoly, MonoidAlgebra, ParameterMap, QuotientRing
from .subsystems import RootSubsystem, SubsystemMonoid, SubsystemSpace, enumerate_subsystems, generated_submonoid

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "CheckResult", "CoxeterError", "CoxeterSystem", "GroupElement", "GroupHom",
    "InfiniteGroupError", "JuyumayaTriple", "LaurentPoly", "MarinAlgebra", "MarinDatum", "MonoidAlgebra",
    "ParameterMap", "QuotientRing", "RootSubsystem", "SubsystemMonoid", "SubsystemSpace", "TieMap",
    "UnsupportedSystemError", "build_algebra", "build_system", "catalog", "check_JM", "compose_pair",
    "define_f_elements", "emit_presentation", "enumerate_subsystems", "functorial_map", "generated_submonoid",
    "juyumaya_datum", "rescaling_check", "verify_presentation",
]
