# Checks for the general-purpose lemmas: sumset growth, incidences, energies

import random
from fractions import Fraction
from typing import Any, Dict, Optional

from ..arithmetic import is_prime
from ..energy import additive_energy, higher_energy_Ek, tsum_Tk, cauchy_schwarz_bounds
from ..errors import BudgetExceeded, MalformedParams
from ..incidence import (
    PlaneSet, PointSet3, count_incidences, max_collinear, random_planes, random_points, trim_to_equal,
)
from ..sets import ResidueSet, combine, rep_function, rotate_mask, sum_mask
from ..types import CheckMode, CheckReport, InstanceFamily, SetOp
from .base import (
    BaseCheck, param_fraction, param_int, param_prime, param_set, param_sets, random_prime, random_set,
)


def _r_minus(A: ResidueSet):
    return rep_function(A, A, SetOp.DIFFERENCE).counts


class PlunneckeCheck(BaseCheck):
    """
    |A + B_j| = a_j |A|  implies a nonempty X in A with
        |X + B_1 + ... + B_h| <= a_1 ... a_h |X|,
    and, for 0 < delta < 1, an X with |X| >= (1 - delta)|A| and the bound
    relaxed by delta^{-h}. Decided by exhaustive subset search.
    """

    check_id = "PLUNNECKE"
    section = "preliminaries"
    statement = "Plunnecke-Ruzsa witness"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        A = param_set(params, "A", p)
        Bs = param_sets(params, "B", p)
        delta = param_fraction(params, "delta", "1/2")
        if not 0 < delta < 1:
            raise MalformedParams("delta", "must lie strictly between 0 and 1")

        n = len(A)
        if n > self.config.plunnecke_max_set:
            raise BudgetExceeded(2 ** n, 2 ** self.config.plunnecke_max_set)
        fingerprint = {"p": p, "A": n, "B": [len(B) for B in Bs], "h": len(Bs)}
        if not n:
            return self.skip(params, fingerprint, {"nonempty_A": False})

        alphas = [Fraction(len(combine(A, B, SetOp.SUM)), n) for B in Bs]
        alpha = Fraction(1)
        for a in alphas:
            alpha *= a
        relaxed = alpha / delta ** len(Bs)

        total = 1  # bitmask of {0}
        for B in Bs:
            total = sum_mask(total, B)
        shifted = [rotate_mask(total, a, p) for a in A.members]

        min_size = -(-(1 - delta) * n // 1)
        best, best_xr = None, None
        sumsets = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            sumsets[m] = sumsets[m ^ low] | shifted[low.bit_length() - 1]
            size, card = sumsets[m].bit_count(), m.bit_count()
            if best is None or size * best[2] < best[1] * card:
                best = (m, size, card)
            if card >= min_size and (best_xr is None or size * best_xr[2] < best_xr[1] * card):
                best_xr = (m, size, card)

        ratio = Fraction(best[1], best[2])
        ratio_xr = Fraction(best_xr[1], best_xr[2])
        forms = {"plunnecke": ratio <= alpha, "plunnecke_xr": ratio_xr <= relaxed}

        def members(mask: int):
            return [a for i, a in enumerate(A.members) if mask >> i & 1]

        details = {
            "alphas": alphas,
            "witness": members(best[0]),
            "witness_ratio": ratio,
            "xr_witness": members(best_xr[0]),
            "xr_ratio": ratio_xr,
            "xr_bound": relaxed,
            "forms": forms,
        }
        return self.decide(params, fingerprint, ratio, alpha, all(forms.values()), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        lo, hi = family.set_range
        A = random_set(rng, p, (max(1, lo), min(hi, self.config.plunnecke_max_set)))
        h = rng.randint(1, 2)
        return {"p": p, "A": A, "B": [random_set(rng, p, family.b_range) for _ in range(h)], "delta": "1/2"}


class IncidenceCheck(BaseCheck):
    """I(P, Pi) << |P|^2/p + |P|^{3/2} + k|P| for |P| = |Pi|, k the max collinear count."""

    check_id = "MISHA_INC"
    section = "preliminaries"
    mode = CheckMode.ESTIMATE_CONSTANT
    group_by = "p"
    statement = "point-plane incidence bound"

    def _families(self, params: Dict[str, Any], p: int):
        if "points" in params or "planes" in params:
            try:
                P = PointSet3.of(p, (tuple(pt) for pt in params.get("points", [])))
                planes = PlaneSet.of(p, (tuple(pl) for pl in params.get("planes", [])))
            except (TypeError, ValueError) as exc:
                raise MalformedParams("points", str(exc)) from None
            return P, planes
        size = param_int(params, "size", minimum=0)
        rng = random.Random(f"incidences:{param_int(params, 'seed')}")
        return trim_to_equal(random_points(p, size, rng), random_planes(p, size, rng), rng)

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_int(params, "p", minimum=2)
        if not is_prime(p):
            raise MalformedParams("p", f"expected a prime, got {p}")
        P, planes = self._families(params, p)
        incidences = count_incidences(P, planes)
        fingerprint = {"p": p, "points": len(P), "planes": len(planes)}

        gates = {"odd_p": p % 2 == 1, "equal_sizes": len(P) == len(planes), "nonempty": len(P) > 0}
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates, {"incidences": incidences})

        k = max_collinear(P)
        n = len(P)
        shape = n * n / p + n ** 1.5 + k * n
        return self.estimate(params, fingerprint, incidences, shape, {"max_collinear": k, "gates": gates})

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        lo, hi = family.points_range
        size = rng.randint(lo, min(hi, p ** 3))
        return {"p": p, "size": size, "seed": rng.randrange(2 ** 32)}


class SmallProductEnergyCheck(BaseCheck):
    """|QA| <= M|Q| implies E+(Q) <= C (M^2 |Q|^4 / p + M^{3/2} |Q|^3 / |A|^{1/2})."""

    check_id = "AA_ENERGY"
    section = "preliminaries"
    mode = CheckMode.ESTIMATE_CONSTANT
    statement = "additive energy of a set with small product set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        Q = param_set(params, "Q", p)
        A = param_set(params, "A", p)
        fingerprint = {"p": p, "Q": len(Q), "A": len(A)}
        gates = {"Q_not_in_zero": len(Q.nonzero()) > 0, "A_not_in_zero": len(A.nonzero()) > 0}
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        qa = len(combine(Q, A, SetOp.PRODUCT))
        M = max(1.0, qa / len(Q))
        q = len(Q)
        shape = M ** 2 * q ** 4 / p + M ** 1.5 * q ** 3 / len(A) ** 0.5
        return self.estimate(params, fingerprint, additive_energy(Q), shape, {"M": M, "QA": qa})

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        return {"p": p, "Q": random_set(rng, p, family.set_range, nonzero=True),
                "A": random_set(rng, p, family.b_range, nonzero=True)}


class DifferenceMomentCheck(BaseCheck):
    """
    (sum_{x in P} r_{A-A}(x)^k)^2 <= |A|^k sum_x r_{A-A}(x)^k r_{P-P}(x)
    and its consequence
    (sum_{x in P} r_{A-A}(x)^k)^4 <= |A|^{2k} E_{2k}(A) E+(P).
    """

    check_id = "EP_INEQ"
    section = "preliminaries"
    statement = "difference moments restricted to a set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        A = param_set(params, "A", p)
        P = param_set(params, "P", p)
        k = param_int(params, "k", minimum=1)

        r = _r_minus(A)
        r_p = _r_minus(P)
        s = sum(r[x] ** k for x in P.members)
        lhs = s * s
        rhs = len(A) ** k * sum(r[x] ** k * r_p[x] for x in range(p))
        lhs_plus = s ** 4
        rhs_plus = len(A) ** (2 * k) * sum(c ** (2 * k) for c in r) * additive_energy(P)

        forms = {"restricted": lhs <= rhs, "energy": lhs_plus <= rhs_plus}
        fingerprint = {"p": p, "A": len(A), "P": len(P), "k": k}
        details = {"rhs": rhs, "lhs_energy": lhs_plus, "rhs_energy": rhs_plus, "forms": forms}
        return self.decide(params, fingerprint, lhs, rhs, all(forms.values()), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        return {"p": p, "A": random_set(rng, p, family.set_range), "P": random_set(rng, p, family.b_range),
                "k": rng.randint(*family.k_range)}


class ChangeOfSetCheck(BaseCheck):
    """(sum_{x in P} r^k_{A-A})^4 <= C |A|^{2k} E_{2k}(AB) (|P|^4/p + |P|^3/|B|^{1/2}) for B, P in F_p*."""

    check_id = "CHANGE_QG"
    section = "preliminaries"
    mode = CheckMode.ESTIMATE_CONSTANT
    statement = "moments through a product set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        A = param_set(params, "A", p)
        B = param_set(params, "B", p)
        P = param_set(params, "P", p)
        k = param_int(params, "k", minimum=1)
        fingerprint = {"p": p, "A": len(A), "B": len(B), "P": len(P), "k": k}
        gates = {"B_in_units": len(B) > 0 and 0 not in B, "P_in_units": len(P) > 0 and 0 not in P}
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        r = _r_minus(A)
        lhs = sum(r[x] ** k for x in P.members) ** 4
        moment = higher_energy_Ek(combine(A, B, SetOp.PRODUCT), 2 * k)
        n = len(P)
        shape = float(len(A) ** (2 * k) * moment) * (n ** 4 / p + n ** 3 / len(B) ** 0.5)
        return self.estimate(params, fingerprint, lhs, shape, {"E_2k_AB": moment})

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        return {"p": p, "A": random_set(rng, p, family.set_range),
                "B": random_set(rng, p, family.b_range, nonzero=True),
                "P": random_set(rng, p, family.c_range, nonzero=True),
                "k": rng.randint(*family.k_range)}


class TrivialEnergyBoundsCheck(BaseCheck):
    """
    E+(A,B) <= min(|A|^2|B|, |B|^2|A|), E+(A,B)^2 <= |A|^3|B|^3,
    E_l(A) >= |A|^l, p^{l-1} E_l(A) >= |A|^{2l} and p T_l(A) >= |A|^{2l} for l >= 2.
    """

    check_id = "ENERGY_CS"
    section = "preliminaries"
    statement = "trivial energy bounds"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        A = param_set(params, "A", p)
        B = param_set(params, "B", p)
        l = param_int(params, "l", default=2, minimum=1)

        energy = additive_energy(A, B) if len(A) and len(B) else 0
        bounds = cauchy_schwarz_bounds(len(A), len(B))
        e_l = higher_energy_Ek(A, l) if len(A) else 0
        t_l = tsum_Tk(A, l) if len(A) else 0
        a = len(A)
        forms = {
            "a2b": energy <= bounds["a2b"],
            "b2a": energy <= bounds["b2a"],
            "a3b3": energy * energy <= bounds["a3b3"],
            "E_l_trivial": e_l >= a ** l,
            "E_l_mass": e_l * p ** (l - 1) >= a ** (2 * l),
            # T_1(A) = |A|; from l = 2 on Cauchy-Schwarz over lA gives p T_l(A) >= |A|^{2l}
            "T_l_mass": t_l * p >= a ** (2 * l) if l > 1 else t_l == a,
        }
        fingerprint = {"p": p, "A": a, "B": len(B), "l": l}
        details = {"E_l": e_l, "T_l": t_l, "forms": forms}
        rhs = min(bounds["a2b"], bounds["b2a"])
        return self.decide(params, fingerprint, energy, rhs, all(forms.values()), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        lo, hi = family.k_range
        return {"p": p, "A": random_set(rng, p, family.set_range), "B": random_set(rng, p, family.b_range),
                "l": rng.randint(max(1, lo), max(1, hi))}
