"""Well-posedness oracles for the transmission problems on the wedge

"""

__all__ = [ "Problem", "TransmissionQuery", "Verdict", "mobius", "mobius_inverse", "illposed_interval_E",
            "check", "epsilon_boundary", "bisect_threshold", "Query" ]

from .query import (Problem, TransmissionQuery, Verdict, bisect_threshold, check, epsilon_boundary,
                    illposed_interval_E, mobius, mobius_inverse)

# Some aliases
Query = TransmissionQuery
