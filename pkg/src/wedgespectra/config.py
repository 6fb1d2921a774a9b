"""Runtime settings, read once from the environment and overridable by the CLI

"""
from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import DomainError

__all__ = [ "Settings", "THREADS_ENV" ]

THREADS_ENV = 'WEDGE_SPECTRA_THREADS'


@dataclass(frozen=True)
class Settings:
    """Tunable knobs of the library

    Attributes:
        threads (int): worker cap for matrix assembly and batched evaluation
        on_curve_tol (float): distance below which a point counts as lying on a spectral curve
        curve_tol (float): default chord length of sampled spectral curves
        eigen_cap (int): largest matrix order accepted by the eigenvalue solver
        max_curve_samples (int): hard cap on the number of samples of one curve branch
    """
    threads: int = os.cpu_count() or 1
    on_curve_tol: float = 1e-6
    curve_tol: float = 1e-3
    eigen_cap: int = 4000
    max_curve_samples: int = 200_000

    def __post_init__(self):
        if self.threads < 1:
            raise DomainError(f'threads must be positive, got {self.threads}')
        if not self.on_curve_tol > 0:
            raise DomainError(f'on_curve_tol must be positive, got {self.on_curve_tol}')
        if not self.curve_tol > 0:
            raise DomainError(f'curve_tol must be positive, got {self.curve_tol}')
        if self.eigen_cap < 2000:
            raise DomainError(f'eigen_cap must be at least 2000, got {self.eigen_cap}')

    @classmethod
    def from_env(cls, environ: dict | None = None) -> Settings:
        """Build the settings from the process environment

        Args:
            environ (dict, optional): mapping to read instead of os.environ. Defaults to None.

        Raises:
            DomainError: the thread variable is not a positive integer

        Returns:
            Settings: defaults, with the thread cap taken from WEDGE_SPECTRA_THREADS when set
        """
        environ = os.environ if environ is None else environ
        raw = environ.get(THREADS_ENV)
        if raw is None or raw.strip() == '':
            return cls()
        try:
            threads = int(raw)
        except ValueError as exc:
            raise DomainError(f'{THREADS_ENV} must be an integer, got {raw!r}') from exc
        return cls(threads=threads)

    def replace(self, **changes) -> Settings:
        """Copy with some fields overridden, ignoring overrides that are None

        Returns:
            Settings: the updated copy
        """
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})


_current = None


def current() -> Settings:
    """Process-wide settings, read lazily from the environment

    Returns:
        Settings: the active settings
    """
    global _current
    if _current is None:
        _current = Settings.from_env()
    return _current


def install(settings: Settings) -> None:
    """Replace the process-wide settings (used by the CLI)

    Args:
        settings (Settings): the new settings
    """
    global _current
    _current = settings
