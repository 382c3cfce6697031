"""Random constructions shared by the strip tests and the acceptance suite."""

import random

from cartdec.group import PermGroup
from cartdec.perm import Perm
from cartdec.products import direct_product, embed
from cartdec.strips import diagonal_strip


def random_element(rng: random.Random, G: PermGroup) -> Perm:
    return rng.choice(_elements(G))


_CACHE: dict = {}


def _elements(G: PermGroup) -> list[Perm]:
    key = tuple(g.key() for g in G.gens)
    if key not in _CACHE:
        _CACHE[key] = sorted(G.elements(), key=lambda p: p.tolist())
    return _CACHE[key]


def random_partition(rng: random.Random, k: int) -> list[list[int]]:
    labels = [rng.randrange(k) for _ in range(k)]
    blocks: dict[int, list[int]] = {}
    for i, l in enumerate(labels):
        blocks.setdefault(l, []).append(i)
    return sorted(blocks.values())


def scott_trial(rng: random.Random, T: PermGroup, normalizer: PermGroup, k: int):
    """A subdirect subgroup of T^k built as a product of twisted diagonal strips."""
    M = direct_product([T] * k)
    supports = random_partition(rng, k)
    strips = []
    for supp in supports:
        twists = [random_element(rng, normalizer) for _ in supp]
        strips.append(diagonal_strip(M, T, supp, twists))
    return M, M.product_of(strips), [tuple(s) for s in supports]


def random_subgroup(rng: random.Random, T: PermGroup) -> PermGroup:
    while True:
        gens = [random_element(rng, T) for _ in range(rng.randint(1, 2))]
        X = PermGroup(gens, degree=T.degree)
        if not X.is_trivial():
            return X


def strip_from_subgroup(M, X: PermGroup, support, twists) -> PermGroup:
    gens = []
    for g in X.gens:
        x = None
        for i, c in zip(support, twists):
            e = embed(g.conj(c), M.domains[i][0], M.degree)
            x = e if x is None else x * e
        gens.append(x)
    return PermGroup(gens, degree=M.degree)


def random_strip_family(rng: random.Random, M, T: PermGroup, normalizer: PermGroup):
    """Pairwise disjoint nontrivial strips, each a twisted diagonal copy of a random subgroup of T."""
    k = M.k
    while True:
        blocks = [b for b in random_partition(rng, k) if len(b) >= 2]
        if blocks:
            break
    out = []
    for supp in blocks:
        X = random_subgroup(rng, T)
        twists = [random_element(rng, normalizer) for _ in supp]
        out.append(strip_from_subgroup(M, X, supp, twists))
    return out
