"""Max-min relay selection rules."""

import enum

import numpy as np


class SelectionScheme(str, enum.Enum):
    """Which channel the max-min rule is applied to.

    ``OPTIMAL`` uses the estimate at the transmission instant (not available
    in practice), ``OUTDATED`` the estimate at the selection instant and
    ``PREDICTED`` the Wiener prediction of the transmission-time channel.
    """

    OPTIMAL = "optimal"
    OUTDATED = "outdated"
    PREDICTED = "predicted"


def selection_metric(draw, scheme):
    """``min(|x_1i|^2, |x_2i|^2)`` per trial and relay, shape ``(trials, N)``."""
    scheme = SelectionScheme(scheme)
    if scheme is SelectionScheme.OPTIMAL:
        x = draw.estimate_t
    elif scheme is SelectionScheme.OUTDATED:
        x = draw.current
    else:
        if draw.predicted is None:
            raise ValueError("predicted scheme needs predicted channels in the draw")
        x = draw.predicted
    gains = x.real**2 + x.imag**2
    return np.minimum(gains[:, 0, :], gains[:, 1, :])


def select_relay(draw, scheme):
    """Index of the selected relay for every trial; ties go to the lowest index."""
    return np.argmax(selection_metric(draw, scheme), axis=1)
