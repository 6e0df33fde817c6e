"""Why clustered observations must not count as independent sources.

Two rain gauges a kilometre apart mostly report the same weather; pooling
them as independent witnesses overstates the evidence.  This script builds
the classic four-point layout: x and y are close together and both report
rain, z is far away and reports no rain, and we ask about the midpoint w.
"""

from beliefmap import (
    CombinationConfig,
    DecayModel,
    ExplicitSpace,
    InteractionModel,
    Observation,
    ObservationSet,
    ValueDomain,
    combine_at_focus,
    conditional_importance,
    interaction_measure,
    lambda_from_half_distance,
)

rain = ValueDomain(["rain", "dry"])

space = ExplicitSpace(
    ["x", "y", "z", "w"],
    {
        ("x", "y"): 1.0,   # the two concurring gauges are neighbours
        ("x", "w"): 10.0,
        ("y", "w"): 10.0,
        ("z", "w"): 10.0,  # the dissenting gauge is equally relevant to w
        ("x", "z"): 19.0,
        ("y", "z"): 19.0,
    },
)
obs = ObservationSet(
    rain,
    [Observation("x", "rain"), Observation("y", "rain"), Observation("z", "dry")],
)

# every gauge is 10 away from w; pick the scale so each support is 1/2
model = DecayModel.uniform(rain, lambda_from_half_distance(10.0))
interaction = InteractionModel(10.0)

print("conditional importances once x is counted:")
print(f"  y (1 away from x):  {conditional_importance('y', ['x'], space, interaction):.4f}")
print(f"  z (19 away from x): {conditional_importance('z', ['x'], space, interaction):.4f}")
print(f"  z once x and y are counted: {conditional_importance('z', ['x', 'y'], space, interaction):.4f}")
print("effective source count of {x, y, z}:",
      f"{interaction_measure(['x', 'y', 'z'], space, interaction):.4f}")

naive = combine_at_focus(obs, "w", space, model, None,
                         CombinationConfig("normalized", "plain"))
print("\nnaive pooling at w (x and y counted twice):")
print("  ", naive)

aware = combine_at_focus(obs, "w", space, model, interaction,
                         CombinationConfig("normalized", "interaction"))
print("dependence-aware pooling at w:")
print("  ", aware)

print("\nnaive says rain is three times likelier than dry; discounting the")
print("duplicated gauge brings the two back toward balance, as it should:")
print("  naive pignistic:", {k: round(v, 3) for k, v in naive.pignistic().items()})
print("  aware pignistic:", {k: round(v, 3) for k, v in aware.pignistic().items()})

# in the limit, re-reporting the same location is free
stutter = ObservationSet(rain, [Observation("x", "rain")] * 3 + [Observation("z", "dry")])
once = ObservationSet(rain, [Observation("x", "rain"), Observation("z", "dry")])
a = combine_at_focus(stutter, "w", space, model, interaction)
b = combine_at_focus(once, "w", space, model, interaction)
print("\nthree identical reports from x equal a single one:", a == b)
