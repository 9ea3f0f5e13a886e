"""Domain enums — pure Python, no external dependencies."""

from enum import Enum


class FunctionClass(str, Enum):
    BLOCK = "block"
    BUMPS = "bumps"
    HEAVISINE = "heavisine"
    DOPPLER = "doppler"


class NoiseFamily(str, Enum):
    GAUSSIAN = "gaussian"
    UNIFORM = "uniform"
    LAPLACE = "laplace"


class Modification(str, Enum):
    """Offset / scale applied to a clean signal before corruption."""

    NONE = "none"
    OFFSET_UP = "+1.5"
    OFFSET_DOWN = "-1.5"
    DOUBLE = "x2"
    HALF = "x0.5"


class SignalFormat(str, Enum):
    CSV = "csv"
    BINARY = "bin"


class MixRole(str, Enum):
    FOREGROUND = "foreground"
    BACKGROUND = "background"
