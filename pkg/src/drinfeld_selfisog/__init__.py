"""Self-isogenous Drinfeld modular polynomials, CM orders and isogeny volcanoes over F_q[T]."""
from . import algebra_core, cm_orders, level_reduction, selfisog_modpoly, skew_drinfeld, volcano
from .errors import AlgebraError

__all__ = ["algebra_core", "cm_orders", "level_reduction", "selfisog_modpoly",
           "skew_drinfeld", "volcano", "AlgebraError"]
__version__ = "0.1.0"
