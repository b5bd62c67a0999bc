"""Ordered product of complexes and its projections."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .complexes import OrderedComplex, maximal_only
from .errors import NotAProductComplex
from .maps import SimplicialMap


@dataclass(frozen=True)
class ProductComplex:
    """``left x right`` with product vertices re-encoded as integers.

    ``pairs[i]`` is the (left, right) vertex pair encoded as ``i``; ids are
    the lexicographic rank of the pair.
    """

    complex: OrderedComplex
    left: OrderedComplex
    right: OrderedComplex
    pairs: tuple[tuple[int, int], ...]

    _codes: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_codes", {p: i for i, p in enumerate(self.pairs)})

    def encode(self, u: int, v: int) -> int:
        return self._codes[(u, v)]


def _grid_chains(sigma: tuple[int, ...], tau: tuple[int, ...]):
    """Maximal chains in the grid poset ``sigma x tau`` (monotone lattice paths)."""
    p, q = len(sigma) - 1, len(tau) - 1
    for rights in combinations(range(p + q), q):
        i = j = 0
        chain = [(sigma[0], tau[0])]
        rs = set(rights)
        for step in range(p + q):
            if step in rs:
                j += 1
            else:
                i += 1
            chain.append((sigma[i], tau[j]))
        yield chain


def ordered_product(k: OrderedComplex, l: OrderedComplex) -> ProductComplex:
    """Simplices are componentwise chains whose projections are simplices of the factors."""
    chains = set()
    for sigma in k.maximal:
        for tau in l.maximal:
            for chain in _grid_chains(sigma, tau):
                chains.add(tuple(chain))
    pairs = tuple(sorted({p for ch in chains for p in ch}))
    codes = {p: i for i, p in enumerate(pairs)}
    encoded = maximal_only(tuple(sorted(codes[p] for p in ch)) for ch in chains)
    return ProductComplex(OrderedComplex._trusted(encoded), k, l, pairs)


def projection(product: ProductComplex, factor_index: int) -> SimplicialMap:
    """The projection onto factor 1 (left) or 2 (right)."""
    if not isinstance(product, ProductComplex):
        raise NotAProductComplex("projection needs the encoding table of a product")
    if factor_index == 1:
        target, images = product.left, [u for u, _ in product.pairs]
    elif factor_index == 2:
        target, images = product.right, [v for _, v in product.pairs]
    else:
        raise ValueError("factor_index must be 1 or 2")
    return SimplicialMap(product.complex, target, images, check=False)
