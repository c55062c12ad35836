# Point-plane incidences in F_p^3

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, List, Tuple

import numpy as np

from .arithmetic import is_prime, inverse_mod
from .errors import DegenerateInput, ModulusMismatch, NotPrime, TooSmall
from .sets import ResidueSet, combine, inverse_table
from .types import SetOp

Point = Tuple[int, int, int]
Plane = Tuple[int, int, int, int]

# Planes per block in the vectorised incidence count
_CHUNK = 4096


def _check_prime(p: int):
    # Incidence geometry also runs over F_2
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def canonical_plane(plane: Plane, p: int) -> Plane:
    """Scale (a, b, c, d) so the first nonzero of (a, b, c) is 1."""
    a, b, c, d = (v % p for v in plane)
    lead = next((v for v in (a, b, c) if v), 0)
    if not lead:
        raise DegenerateInput("plane normal must be nonzero")
    s = inverse_mod(lead, p)
    return (a * s % p, b * s % p, c * s % p, d * s % p)


@dataclass(frozen=True)
class PointSet3:
    modulus: int
    points: Tuple[Point, ...] = ()

    def __post_init__(self):
        _check_prime(self.modulus)
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be distinct")
        if any(not 0 <= v < self.modulus for pt in self.points for v in pt):
            raise ValueError(f"coordinates must lie in [0, {self.modulus - 1}]")

    @classmethod
    def of(cls, modulus: int, points: Iterable[Point]) -> 'PointSet3':
        return cls(modulus, tuple(sorted({tuple(v % modulus for v in pt) for pt in points})))

    def __len__(self) -> int:
        return len(self.points)

    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(-1, 3)


@dataclass(frozen=True)
class PlaneSet:
    modulus: int
    planes: Tuple[Plane, ...] = ()

    def __post_init__(self):
        _check_prime(self.modulus)
        for plane in self.planes:
            if canonical_plane(plane, self.modulus) != plane:
                raise ValueError(f"plane {plane} is not in canonical form")
        if len(set(self.planes)) != len(self.planes):
            raise ValueError("planes must be distinct")

    @classmethod
    def of(cls, modulus: int, planes: Iterable[Plane]) -> 'PlaneSet':
        return cls(modulus, tuple(sorted({canonical_plane(pl, modulus) for pl in planes})))

    def __len__(self) -> int:
        return len(self.planes)

    def array(self) -> np.ndarray:
        return np.array(self.planes, dtype=np.int64).reshape(-1, 4)


def count_incidences(P: PointSet3, planes: PlaneSet) -> int:
    """|{(x, pi) : a x1 + b x2 + c x3 = d}|"""
    if P.modulus != planes.modulus:
        raise ModulusMismatch(P.modulus, planes.modulus)
    if not len(P) or not len(planes):
        return 0
    p = P.modulus
    pts = P.array()
    arr = planes.array()
    total = 0
    for start in range(0, len(arr), _CHUNK):
        block = arr[start:start + _CHUNK]
        values = (pts @ block[:, :3].T - block[:, 3]) % p
        total += int(np.count_nonzero(values == 0))
    return total


def max_collinear(P: PointSet3) -> int:
    """Largest number of points of P on one line of F_p^3."""
    if len(P) < 1:
        raise TooSmall("max_collinear needs at least one point")
    if len(P) == 1:
        return 1
    p = P.modulus
    inv = inverse_table(p)
    pts = P.array()
    best = 1
    for i in range(len(pts)):
        directions = np.delete((pts - pts[i]) % p, i, axis=0)
        lead_index = np.argmax(directions != 0, axis=1)
        lead = directions[np.arange(len(directions)), lead_index]
        normalised = directions * inv[lead][:, None] % p
        keys = (normalised[:, 0] * p + normalised[:, 1]) * p + normalised[:, 2]
        _, counts = np.unique(keys, return_counts=True)
        best = max(best, int(counts.max()) + 1)
    return best


def energy_incidence_instance(Q: ResidueSet, A: ResidueSet) -> Tuple[PointSet3, PlaneSet]:
    """
    Points Q x QA x (A*)^{-1} and planes x + y/a - q4 z = q3 over
    (a, q4, q3) in A* x QA x Q, so that an incidence is a solution of
    q1 + q2/a = q3 + q4/a'.
    """
    if Q.modulus != A.modulus:
        raise ModulusMismatch(Q.modulus, A.modulus)
    a_star = A.nonzero()
    if not len(a_star):
        raise DegenerateInput("A must contain a nonzero element")
    if not len(Q.nonzero()):
        raise DegenerateInput("Q must contain a nonzero element")
    p = Q.modulus
    qa = combine(Q, A, SetOp.PRODUCT)
    inverses = [inverse_mod(a, p) for a in a_star.members]

    points = PointSet3.of(p, product(Q.members, qa.members, inverses))
    planes = PlaneSet(p, tuple(sorted(
        (1, inv_a, (-q4) % p, q3)
        for inv_a, q4, q3 in product(inverses, qa.members, Q.members)
    )))
    return points, planes


def full_space(p: int) -> PointSet3:
    return PointSet3(p, tuple(product(range(p), repeat=3)))


def all_planes(p: int) -> PlaneSet:
    normals: List[Tuple[int, int, int]] = (
        [(1, b, c) for b in range(p) for c in range(p)]
        + [(0, 1, c) for c in range(p)]
        + [(0, 0, 1)]
    )
    return PlaneSet(p, tuple(sorted((a, b, c, d) for a, b, c in normals for d in range(p))))


def random_points(p: int, size: int, rng: random.Random) -> PointSet3:
    size = min(size, p ** 3)
    chosen = rng.sample(range(p ** 3), size)
    return PointSet3.of(p, ((x // (p * p), x // p % p, x % p) for x in chosen))


def random_planes(p: int, size: int, rng: random.Random) -> PlaneSet:
    universe = all_planes(p).planes
    return PlaneSet(p, tuple(sorted(rng.sample(universe, min(size, len(universe))))))


def trim_to_equal(P: PointSet3, planes: PlaneSet, rng: random.Random) -> Tuple[PointSet3, PlaneSet]:
    """Drop uniformly random members of the larger family until |P| = |Pi|."""
    n = min(len(P), len(planes))
    if len(P) > n:
        P = PointSet3(P.modulus, tuple(sorted(rng.sample(P.points, n))))
    if len(planes) > n:
        planes = PlaneSet(planes.modulus, tuple(sorted(rng.sample(planes.planes, n))))
    return P, planes
