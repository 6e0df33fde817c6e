"""Mass assignments, belief vs plausibility, and pooling of evidence.

A mass assignment spreads one unit of belief over *subsets* of the possible
values, which lets it say "I don't know" (mass on the whole set) separately
from "it's a coin flip" (mass split over singletons).  This walkthrough
builds a few assignments over {rain, dry} and pools them.
"""

from beliefmap import (
    ValueDomain,
    combine,
    combine_many,
    conflict_degree,
    make_mass,
    simple_support,
    vacuous,
)

weather = ValueDomain(["rain", "dry"])

# Total ignorance: everything on {rain, dry}.  Note the difference from a
# 50/50 probability: ignorance supports neither value.
unknown = vacuous(weather)
print("ignorant:       ", unknown)
print("  belief(rain) =", unknown.belief("rain"), "  plausibility(rain) =", unknown.plausibility("rain"))

fifty_fifty = make_mass(weather, {("rain",): 0.5, ("dry",): 0.5})
print("coin flip:      ", fifty_fifty)
print("  belief(rain) =", fifty_fifty.belief("rain"), "  plausibility(rain) =", fifty_fifty.plausibility("rain"))

# A single piece of evidence of strength 0.7 for rain.
witness = simple_support(weather, "rain", 0.7)
print("one witness:    ", witness)

# A second, weaker witness claims it is dry.  Pooling keeps track of how
# much the two contradict each other.
sceptic = simple_support(weather, "dry", 0.4)
print("contradiction between witnesses:", conflict_degree(witness, sceptic))

pooled = combine(witness, sceptic, mode="unnormalized")
print("pooled (unnormalized):", pooled)
print("pooled (normalized):  ", pooled.normalize())

# Three supports of strength 1/2: two for rain, one for dry.
half = simple_support(weather, "rain", 0.5)
against = simple_support(weather, "dry", 0.5)
m = combine_many([half, half, against], mode="normalized")
print("two for, one against, all at strength 0.5:", m)

# At decision time the remaining ignorance is split evenly.
print("pignistic probabilities:", m.pignistic())
