"""Dense matrices of finite sections and their eigenvalue contract

"""
from __future__ import annotations

import logging

import numpy
import scipy.linalg

from ..errors import DomainError, EigenvalueError
from .. import config

__all__ = [ "DenseMatrix", "eigenvalues" ]

logger = logging.getLogger(__name__)


class DenseMatrix:
    """Immutable square matrix with finite entries

    The entries are copied at construction and the stored array is read-only.
    """

    def __init__(self, entries):
        array = numpy.array(entries, copy=True)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise DomainError(f'a square matrix of order >= 1 is required, got shape {array.shape}')
        if not numpy.issubdtype(array.dtype, numpy.number):
            raise DomainError(f'numeric entries are required, got dtype {array.dtype}')
        if not numpy.all(numpy.isfinite(array)):
            raise DomainError('matrix entries must be finite')
        array.setflags(write=False)
        self.__entries = array

    @property
    def n(self) -> int:
        """Order

        Returns:
            int: number of rows (and columns)
        """
        return self.__entries.shape[0]

    @property
    def entries(self) -> numpy.ndarray:
        """Entries

        Returns:
            numpy.ndarray: read-only (n, n) array, row-major
        """
        return self.__entries

    def __array__(self, dtype=None, copy=None):
        return numpy.array(self.__entries, dtype=dtype)

    def __getitem__(self, index):
        return self.__entries[index]

    def norm(self) -> float:
        """Frobenius norm"""
        return float(numpy.linalg.norm(self.__entries))

    def trace(self) -> complex:
        return complex(numpy.trace(self.__entries))

    def is_toeplitz(self, tol: float = 0.0) -> bool:
        """Whether every diagonal is constant up to tol"""
        m = self.__entries
        return bool(numpy.all(numpy.abs(m[1:, 1:] - m[:-1, :-1]) <= tol))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return numpy.array_equal(self.__entries, other.entries)

    def __repr__(self) -> str:
        return f'DenseMatrix(n={self.n}, dtype={self.__entries.dtype})'


def eigenvalues(M: DenseMatrix, cap: int | None = None) -> numpy.ndarray:
    """All eigenvalues of a dense matrix, multiplicities counted

    LAPACK geev on the balanced Hessenberg form (scipy.linalg.eigvals).

    Args:
        M (DenseMatrix): the matrix
        cap (int, optional): largest accepted order. Defaults to the configured eigen_cap.

    Raises:
        EigenvalueError: the order exceeds cap, or the QR iteration failed

    Returns:
        numpy.ndarray: n complex eigenvalues, in LAPACK order
    """
    cap = config.current().eigen_cap if cap is None else cap
    if M.n > cap:
        raise EigenvalueError(f'matrix order {M.n} exceeds the eigenvalue cap {cap}')
    logger.debug('eigenvalues of a %dx%d matrix', M.n, M.n)
    try:
        values = scipy.linalg.eigvals(M.entries, check_finite=False)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise EigenvalueError(f'eigenvalue iteration failed: {exc}') from exc
    return numpy.asarray(values, dtype=complex)
