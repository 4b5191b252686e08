from __future__ import annotations

import hypothesis.strategies as st

from andersonstats import MultiIndex


def points(d: int, span: int = 8):
    return st.tuples(*([st.integers(-span, span)] * d))


@st.composite
def multi_indices(draw, dims=st.integers(1, 3), max_support: int = 4, max_exp: int = 4):
    d = draw(dims)
    support = draw(st.lists(points(d), min_size=1, max_size=max_support, unique=True))
    exponents = draw(
        st.lists(
            st.integers(1, max_exp), min_size=len(support), max_size=len(support)
        )
    )
    return MultiIndex.from_map(d, dict(zip(support, exponents)))
