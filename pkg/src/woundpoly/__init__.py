"""Locally convex polygons winding several times around the origin: polarity,
Santalo points and volume-product bounds."""

from .bounds import (
    BoundReport,
    EqualityCase,
    classify_equality,
    cnk_product,
    lemma11_check,
    prop10_bound,
    prop12_bound,
    prop12_constants,
    remark13_compare,
)
from .curve import (
    WoundPolygon,
    apply_linear,
    area,
    construct_cnk,
    guggenheimer_example,
    radial_function,
    translate,
    validate,
)
from .polarity import equal_angle_polar_area, polar, volume_product
from .santalo import kernel, santalo_point, santalo_product
from .search import SearchConfig, criticality_residual, local_search, unboundedness_sweep

__all__ = [
    "BoundReport", "EqualityCase", "SearchConfig", "WoundPolygon",
    "apply_linear", "area", "classify_equality", "cnk_product", "construct_cnk",
    "criticality_residual", "equal_angle_polar_area", "guggenheimer_example",
    "kernel", "lemma11_check", "local_search", "polar", "prop10_bound",
    "prop12_bound", "prop12_constants", "radial_function", "remark13_compare",
    "santalo_point", "santalo_product", "translate", "unboundedness_sweep",
    "validate", "volume_product",
]
