"""Shared hypothesis strategies for randomized algebra tests."""

from hypothesis import strategies as st

from beliefmap import ValueDomain, make_mass


@st.composite
def domains(draw, min_size=2, max_size=4):
    n = draw(st.integers(min_size, max_size))
    return ValueDomain([f"v{i}" for i in range(n)])


@st.composite
def mass_assignments(draw, domain=None, normalized=False, max_focals=5):
    """Random assignment; focal weights are normalized by their sum."""
    if domain is None:
        domain = draw(domains())
    start = 1 if normalized else 0
    focal = draw(
        st.lists(
            st.integers(start, domain.full_bits),
            min_size=1,
            max_size=max_focals,
            unique=True,
        )
    )
    weights = draw(
        st.lists(
            st.floats(0.01, 1.0, allow_nan=False),
            min_size=len(focal),
            max_size=len(focal),
        )
    )
    total = sum(weights)
    return make_mass(domain, {b: w / total for b, w in zip(focal, weights)})


@st.composite
def assignment_pairs(draw, normalized=False):
    domain = draw(domains())
    m1 = draw(mass_assignments(domain=domain, normalized=normalized))
    m2 = draw(mass_assignments(domain=domain, normalized=normalized))
    return m1, m2


@st.composite
def assignment_triples(draw, normalized=False):
    domain = draw(domains())
    return tuple(
        draw(mass_assignments(domain=domain, normalized=normalized)) for _ in range(3)
    )
