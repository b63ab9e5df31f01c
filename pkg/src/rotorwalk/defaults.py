"""Frozen default parameters.

CALIBRATED_K was fixed by requiring that (a) the flatness optimizer's global
optimum over the default flat window reproduces the canonical preset "d"
triple, (b) the prepared plateau's ballistic support reaches |n| ~ 20 after
the default preparation leg, and (c) both target estimators succeed across
the bulk of the flat window with refocus weights near ten percent. All three
single out k = 1.10 with the flat window below.
"""

CALIBRATED_K = 1.10

# Kicks per protocol leg (preparation, backward, refocus legs are equal).
DEFAULT_KICKS_PER_LEG = 15

# Flatness-cost window: N + 1 sites, n in [-N/2, N/2].
DEFAULT_FLAT_WINDOW = 30

# Central cut half-width for the suppression step.
DEFAULT_CUT_HALFWIDTH = 3

# Search protocol initial state: the optimized preset.
DEFAULT_SEARCH_PRESET = "d"

DEFAULT_RESTARTS = 16
DEFAULT_SEED = 0

# Population threshold defining the one-shot hitting time.
DEFAULT_HITTING_THRESHOLD = 0.05
