# Multiplicative subgroups of F_p*, invariant sets and shift intersections

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from .arithmetic import FieldElement, Prime, divisors, primitive_root
from .errors import BadRatio, BadShift, ModulusMismatch, NotADivisor, ZeroRep
from .sets import ResidueSet, combine, rotate_mask, sum_mask
from .types import SetOp


def _modulus_of(p: Union[Prime, int]) -> Prime:
    return p if isinstance(p, Prime) else Prime(p)


def _residue(x: Union[FieldElement, int], p: int) -> int:
    return (x.residue if isinstance(x, FieldElement) else int(x)) % p


@dataclass(frozen=True)
class Subgroup:
    modulus: int
    order: int
    members: ResidueSet

    def __post_init__(self):
        p = self.modulus
        if (p - 1) % self.order:
            raise NotADivisor(f"{self.order} does not divide {p - 1}")
        # d distinct roots of x^d = 1 are exactly the subgroup of order d
        if len(self.members) != self.order or 1 not in self.members:
            raise ValueError(f"members do not form a subgroup of order {self.order}")
        if any(pow(x, self.order, p) != 1 for x in self.members):
            raise ValueError(f"members do not form a subgroup of order {self.order}")

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.members)

    def coset(self, r: int) -> ResidueSet:
        return ResidueSet.of(self.modulus, (r * g for g in self.members))


def subgroup_of_order(p: Union[Prime, int], d: int) -> Subgroup:
    """The subgroup of order d, generated by g^{(p-1)/d} for the least primitive root g."""
    prime = _modulus_of(p)
    q = prime.value
    if d < 1 or (q - 1) % d:
        raise NotADivisor(f"{d} does not divide {q - 1}")
    generator = pow(primitive_root(prime).residue, (q - 1) // d, q)
    powers = []
    x = 1
    for _ in range(d):
        powers.append(x)
        x = x * generator % q
    return Subgroup(q, d, ResidueSet.of(q, powers))


def subgroups(p: Union[Prime, int]) -> List[Subgroup]:
    """All subgroups of F_p*, by increasing order."""
    prime = _modulus_of(p)
    return [subgroup_of_order(prime, d) for d in divisors(prime.value - 1)]


@dataclass(frozen=True)
class InvariantSet:
    """A union of cosets of a subgroup."""
    modulus: int
    base: Subgroup
    coset_reps: ResidueSet
    members: ResidueSet

    def __post_init__(self):
        if len(self.members) != len(self.coset_reps) * self.base.order:
            raise ValueError("coset representatives are not in distinct cosets")

    def __len__(self) -> int:
        return len(self.members)


def invariant_set(G: Subgroup, reps: ResidueSet) -> InvariantSet:
    """Union of the cosets rG over reps; each coset is represented by its smallest element."""
    if reps.modulus != G.modulus:
        raise ModulusMismatch(reps.modulus, G.modulus)
    if 0 in reps:
        raise ZeroRep("0 lies in no coset of a multiplicative subgroup")
    canonical = set()
    members = set()
    for r in reps.members:
        coset = G.coset(r)
        canonical.add(coset.members[0])
        members.update(coset.members)
    return InvariantSet(
        modulus=G.modulus,
        base=G,
        coset_reps=ResidueSet.of(G.modulus, canonical),
        members=ResidueSet.of(G.modulus, members),
    )


def is_invariant(Q: ResidueSet, G: Union[Subgroup, ResidueSet]) -> bool:
    """QG = Q"""
    base = G.members if isinstance(G, Subgroup) else G
    return combine(Q, base, SetOp.PRODUCT) == Q


@dataclass
class ShiftProfile:
    values: Dict[int, int] = field(default_factory=dict)
    maximum: int = 0
    argmax: Optional[int] = None


def shift_intersection_profile(Q1: ResidueSet, Q2: ResidueSet) -> ShiftProfile:
    """|Q1 cap (Q2 + x)| for every x != 0, by bitmask rotation."""
    if Q1.modulus != Q2.modulus:
        raise ModulusMismatch(Q1.modulus, Q2.modulus)
    p = Q1.modulus
    profile = ShiftProfile()
    for x in range(1, p):
        count = (Q1.mask & rotate_mask(Q2.mask, x, p)).bit_count()
        profile.values[x] = count
        if profile.argmax is None or count > profile.maximum:
            profile.maximum = count
            profile.argmax = x
    return profile


def shifted_quotient_rep(Q: ResidueSet, alpha: Union[FieldElement, int], x: Union[FieldElement, int]) -> int:
    """|Q cap (xQ + alpha(x - 1))|"""
    p = Q.modulus
    a = _residue(alpha, p)
    r = _residue(x, p)
    if a == 0:
        raise BadShift("alpha must be nonzero")
    if r in (0, 1):
        raise BadRatio(f"x must avoid 0 and 1, got {r}")
    shift = a * (r - 1)
    return sum(1 for q in Q.members if (r * q + shift) % p in Q)


def covering_number(G: Subgroup) -> Optional[int]:
    """Least N with NG = F_p, or None for the trivial subgroup."""
    p = G.modulus
    if G.order == 1:
        return None
    full = (1 << p) - 1
    current = G.members.mask
    n = 1
    while current != full:
        current = sum_mask(current, G.members)
        n += 1
    return n
