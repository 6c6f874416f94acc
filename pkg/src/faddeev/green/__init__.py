"""Faddeev Green's function at positive energy."""
from .contour import (CalibrationError, ContourSpec, calibrate_panels, eval_contour,
                      eval_contour_batch, upper_limit_t1, upper_limit_t2, upper_limit_t3)
from .core import (GreenGrid, GreenGridCache, GridEvaluationError, green_eval,
                   green_eval_batch, green_grid)
from .domains import DomainTag, classify_domain, classify_domains
from .layer import SingleLayerCache, SingleLayerError, single_layer_setup

__all__ = [
    "CalibrationError", "ContourSpec", "calibrate_panels", "eval_contour", "eval_contour_batch",
    "upper_limit_t1", "upper_limit_t2", "upper_limit_t3", "GreenGrid", "GreenGridCache",
    "GridEvaluationError", "green_eval", "green_eval_batch", "green_grid", "DomainTag",
    "classify_domain", "classify_domains", "SingleLayerCache", "SingleLayerError",
    "single_layer_setup",
]
