"""q-deformed oscillator algebra and damped-oscillator verification engine."""

from ._core import *  # noqa: F401,F403
from ._core import ToleranceError  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
