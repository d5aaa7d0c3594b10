"""Shared physical constants and unit conversion factors."""

import math

SPEED_OF_LIGHT = 299792458.0  # m/s, exact

TWO_PI = 2.0 * math.pi

# Gaussian FWHM = 2 sqrt(2 ln 2) sigma
FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))

# design wavelength of the phase elements, 780 nm
DEFAULT_LAMBDA0 = 780e-9


def slope_to_delay(x_lambda0: float, lambda0: float = DEFAULT_LAMBDA0) -> float:
    """Convert an effective path difference in lambda0 units to a group delay in seconds."""
    return x_lambda0 * lambda0 / SPEED_OF_LIGHT
