"""Ranking candidate locations for the next measurement.

The one-step heuristic: for every candidate cell, weigh each possible
measurement outcome by the cell's current pignistic probability, rebuild
the field with that observation added, and score the candidate by the
expected drop in total grid entropy.  Far-away unknown regions win over
cells next to existing measurements.
"""

from beliefmap import (
    CombinationConfig,
    DecayModel,
    GridSpace,
    InteractionModel,
    Observation,
    ObservationSet,
    ValueDomain,
    entropy_map,
    extrapolate_field,
    plausible_map,
    suggest_next_measurement,
)

colors = ValueDomain(["white", "black"])
grid = GridSpace(16, 16)
obs = ObservationSet(
    colors,
    [
        Observation((3, 3), "black"),
        Observation((4, 3), "black"),
        Observation((12, 11), "white"),
    ],
)
model = DecayModel.uniform(colors, 3.0)
interaction = InteractionModel(3.0)
cfg = CombinationConfig("normalized", "interaction")

field = extrapolate_field(grid, obs, model, interaction, cfg)
print(f"current total entropy: {entropy_map(field).values.sum():.2f} nats")

ranked = suggest_next_measurement(grid, obs, model, interaction, cfg, k=8, stride=2)
print("\ntop candidates (every second cell considered):")
print("  rank   cell      expected entropy loss")
for i, ((x, y), loss) in enumerate(ranked, start=1):
    print(f"  {i:4d}   ({x:2d},{y:2d})   {loss:8.3f}")

# the known cells are worthless to re-measure
losses = dict(suggest_next_measurement(grid, obs, model, interaction, cfg, k=256))
for o in obs:
    print(f"\nre-measuring {o.location}: expected loss {losses[o.location]:.6f}")
    break

# what the plausible map looks like before measuring further
vf = plausible_map(field, threshold=0.05)
glyph = {None: ".", "white": "w", "black": "B"}
print("\nplausible map ('.' = undetermined):")
for y in range(grid.height):
    print("  " + "".join(glyph[vf.label_at((x, y))] for x in range(grid.width)))
