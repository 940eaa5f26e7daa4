"""Physical constants and unit helpers shared across the package."""

import math

#: Magnetic flux quantum h/2e [Wb] (CODATA 2018, exact).
PHI0 = 2.067833848e-15

TWO_PI = 2.0 * math.pi

US = 1e-6
MS = 1e-3
NS = 1e-9
KHZ = 1e3
MHZ = 1e6
GHZ = 1e9
FF = 1e-15
PW = 1e-12
UW = 1e-6
MK = 1e-3
