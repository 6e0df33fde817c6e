"""How far does an observation reach?

An observed value supports believing the same value nearby, with strength
exp(-d / lam).  The scale lam is per value: soil type persists for
kilometres, the parity of a temperature decimal does not persist at all.
"""

import math

import numpy as np

from beliefmap import (
    DecayModel,
    GridSpace,
    Observation,
    ValueDomain,
    decay,
    lambda_from_half_distance,
    lambda_of_set,
    support_from_observation,
)

soil = ValueDomain(["clay", "sand"])

# Calibrate from a half-support distance: at 10 cells the support should
# have dropped to one half.
lam = lambda_from_half_distance(10.0)
print(f"scale for a half-distance of 10 cells: {lam:.4f}")

model = DecayModel.uniform(soil, lam)
print("\n  d    support")
for d in (0.0, 2.0, 5.0, 10.0, 20.0, 40.0):
    print(f"{d:5.1f}   {decay(['clay'], d, model):.4f}")

# Limit cases: a non-persistent value supports nothing beyond its own
# location, a strongly persistent one reaches everywhere.
limits = DecayModel({"clay": 0.0, "sand": math.inf})
print("\nnon-persistent clay at d=0:", decay(["clay"], 0.0, limits))
print("non-persistent clay at d=1:", decay(["clay"], 1.0, limits))
print("strongly persistent sand at d=8000:", decay(["sand"], 8000.0, limits))

# For a set-valued observation the weakest member wins.
mixed = DecayModel({"clay": 3.0, "sand": 30.0})
print("\nscale of {clay, sand} under (3, 30):", lambda_of_set(["clay", "sand"], mixed))

# The support an observation sends toward increasingly distant focus cells.
grid = GridSpace(64, 1)
obs = Observation((0, 0), "clay")
print("\nsupports carried by a clay observation at x=0 (lam from above):")
for x in (0, 5, 10, 30):
    m = support_from_observation(obs, (x, 0), grid, model, soil)
    print(f"  focus x={x:2d}: m({{clay}}) = {m.mass('clay'):.4f}, ignorance = {m.mass(soil.full_bits):.4f}")
