"""Capacity of two-way full-duplex relay selection with imperfect CSI.

Submodules: ``specfun`` (J0, E1 and the log-exponential integrals),
``linalg`` (Hermitian solves), ``channel`` (fading, estimation and Wiener
prediction), ``selection``, ``sinr``, ``analytic`` (closed-form lower bound),
``montecarlo`` and ``cli``.
"""

from .analytic import capacity_lower_bound
from .channel import ChannelModel, CsiConfig, NetworkConfig
from .montecarlo import ExperimentSpec, run
from .selection import SelectionScheme, select_relay
from .sinr import SinrParams

__all__ = [
    "ChannelModel",
    "CsiConfig",
    "ExperimentSpec",
    "NetworkConfig",
    "SelectionScheme",
    "SinrParams",
    "capacity_lower_bound",
    "run",
    "select_relay",
]
