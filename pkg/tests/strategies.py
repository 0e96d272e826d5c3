"""Hypothesis strategies for simplicial complexes."""
from hypothesis import strategies as st

from golodtight.complex import SimplicialComplex, build, is_connected


@st.composite
def complexes(draw, min_m=1, max_m=7, connected=False):
    """A complex on exactly [m]: random faces plus a vertex cover."""
    m = draw(st.integers(min_m, max_m))
    verts = list(range(1, m + 1))
    raw = draw(st.lists(st.sets(st.sampled_from(verts), min_size=1, max_size=min(m, 4)), max_size=2 * m))
    facets = [sorted(f) for f in raw]
    covered = set().union(*raw) if raw else set()
    facets += [[v] for v in verts if v not in covered]
    if connected and m > 1:
        path = [[v, v + 1] for v in range(1, m)]
        facets += path if draw(st.booleans()) else []
    K = build(m, facets)
    if connected and not is_connected(K):
        K = build(m, facets + [[v, v + 1] for v in range(1, m)])
    return K
