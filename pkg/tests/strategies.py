"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from gmacdonald.coeff import Coeff
from gmacdonald.partitions import MultiPartition, Partition


@st.composite
def partitions(draw, max_size=5):
    n = draw(st.integers(0, max_size))
    parts, left = [], n
    while left:
        k = draw(st.integers(1, min(left, parts[-1] if parts else left)))
        parts.append(k)
        left -= k
    return Partition(parts)


@st.composite
def multipartitions(draw, rank=2, max_size=3):
    comps = [draw(partitions(max_size)) for _ in range(rank)]
    while sum(c.size for c in comps) > max_size:
        i = max(range(rank), key=lambda a: comps[a].size)
        comps[i] = Partition(list(comps[i])[:-1])
    return MultiPartition(comps)


@st.composite
def laurent(draw, symbols=("q4", "t4", "u1")):
    terms = draw(st.lists(st.tuples(st.integers(-6, 6), *[st.integers(-3, 3) for _ in symbols]),
                          min_size=1, max_size=3))
    out = Coeff(0)
    for c, *exps in terms:
        out = out + Coeff.monomial(dict(zip(symbols, exps)), c)
    return out


@st.composite
def ratfuncs(draw):
    num = draw(laurent())
    den = draw(laurent())
    if den.is_zero():
        den = Coeff(1)
    return num / den
