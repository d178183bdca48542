"""superstat - A-superstatistics from the Fock modules of sl(1|n)."""

__version__ = "0.1.0"
__author__ = "superstat developers"

from .amplitude import Amplitude
from .models import FockSpec, SamplerConfig, ThermoParams, ThermoReport
from .storage import FileSystemStorage

__all__ = [
    "Amplitude",
    "FockSpec",
    "ThermoParams",
    "ThermoReport",
    "SamplerConfig",
    "FileSystemStorage",
]
