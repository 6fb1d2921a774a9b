"""Spectra of the harmonic layer potentials on a three-dimensional wedge

"""

__all__ = [ "WedgeParams", "TransmissionQuery", "check", "sample_curve", "classify",
            "numerics", "group", "symbols", "operators", "transmission", "config", "errors" ]

from . import config, errors, numerics, group, symbols, operators, transmission
from .symbols import WedgeParams, classify, sample_curve
from .transmission import TransmissionQuery, check
