# Checks for subgroups of F_p* and the sets they leave invariant

import math
import random
from fractions import Fraction
from typing import Any, Dict, Optional

from ..energy import additive_energy, higher_energy_Ek, multiplicative_energy, tsum_Tk
from ..fourier import max_nontrivial_coefficient
from ..sets import combine, one_minus, quotient_quadruple_Q, ratio_set_R, translate
from ..subgroups import (
    InvariantSet, Subgroup, covering_number, shift_intersection_profile, subgroup_of_order,
)
from ..types import CheckMode, CheckReport, InstanceFamily, SetOp, Verdict
from .base import (
    BaseCheck, param_int, param_invariant, param_prime, param_set, param_subgroup,
    random_order, random_prime, random_reps, random_set,
)

MAX_SECOND_FORM_K = 64


def decay(p: int, order: int) -> float:
    """p^{-delta / 2^{7 + 2/delta}} with delta = log|G| / log p."""
    delta = math.log2(order) / math.log2(p)
    return p ** (-delta / 2 ** (7 + 2 / delta))


def second_form_k(order: int, size: int) -> Optional[int]:
    """Least k >= 1 with |G|^{(k+2)/2} >= Q log^{4k} Q (size >= 2), or None up to MAX_SECOND_FORM_K."""
    log_log = math.log2(math.log2(size))
    for k in range(1, MAX_SECOND_FORM_K + 1):
        if (k + 2) / 2 * math.log2(order) >= math.log2(size) + 4 * k * log_log:
            return k
    return None


class SubgroupCheck(BaseCheck):
    """Parameters p, order and (for invariant sets) coset representatives."""

    section = "invariant_sets"
    group_by = "order"

    def subgroup(self, params: Dict[str, Any]) -> Subgroup:
        return param_subgroup(params, param_prime(params))

    def invariant(self, params: Dict[str, Any], G: Subgroup, name: str = "reps") -> InvariantSet:
        return param_invariant(params, G, name)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        return {"p": p, "order": random_order(rng, family, p, order)}

    def generate_invariant(self, rng: random.Random, family: InstanceFamily, p: Optional[int],
                           order: Optional[int], *names: str) -> Dict[str, Any]:
        params = SubgroupCheck.generate(self, rng, family, p, order)
        G = subgroup_of_order(params["p"], params["order"])
        for name in names:
            params[name] = random_reps(rng, params["p"], G, family.c_range[1])
        return params


class SubgroupTkCheck(SubgroupCheck):
    """
    For k >= 2 and 2^{64k} C^4 <= |G|:
        T_{2^k}(G) <= 2^{4k+6} C log^4|G| |G|^{2^{k+1}} / p
                      + 16^{k^2} C^{k-1} log^{4(k-1)}|G| |G|^{2^{k+1} - (k+7)/2} E+(G).
    """

    check_id = "TK_SUBGROUP"
    statement = "T_{2^k} of a multiplicative subgroup"

    def size_gates(self, k: int, order: int) -> Dict[str, bool]:
        return {
            "k_at_least_2": k >= 2,
            "nondegenerate_logs": order >= 2,
            "subgroup_large": self.at_most(Fraction(2) ** (64 * k) * self.c_star ** 4, order),
        }

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        k = param_int(params, "k", minimum=1)
        p, g = G.modulus, G.order
        fingerprint = {"p": p, "order": g, "k": k}
        gates = self.size_gates(k, g)
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        s = 2 ** (k + 1)
        energy = additive_energy(G.members)
        L = self.log2(g)
        head = 2 ** (4 * k + 6) * L ** 4 * Fraction(g ** s, p)
        tail = 16 ** (k * k) * self.power(L, 4 * (k - 1)) * self.power(g, s - Fraction(k + 7, 2)) * energy

        def rhs(C: Fraction):
            return head * C + tail * C ** (k - 1)

        lhs = tsum_Tk(G.members, 2 ** k)
        minimal = self.minimal_c_star(lambda C: self.at_most(lhs, rhs(C)))
        return self.decide(params, fingerprint, lhs, rhs(self.c_star), self.at_most(lhs, rhs(self.c_star)),
                           {"gates": gates, "energy": energy, "minimal_c_star": minimal})

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        params = super().generate(rng, family, p, order)
        lo, hi = family.k_range
        params["k"] = rng.randint(max(2, lo), max(2, hi))
        return params


class InvariantTkCheck(SubgroupTkCheck):
    """The same bound for a G-invariant Q, with |G|^{2^{k+1}} replaced by |Q|^{2^{k+1}}."""

    check_id = "HOLDER_Q"
    group_by = None
    statement = "T_{2^k} of an invariant set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        Q = self.invariant(params, G)
        k = param_int(params, "k", minimum=1)
        p, g, q = G.modulus, G.order, len(Q)
        fingerprint = {"p": p, "order": g, "Q": q, "k": k}
        gates = self.size_gates(k, g)
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        s = 2 ** (k + 1)
        energy = additive_energy(G.members)
        L = self.log2(g)
        head = 2 ** (4 * k + 6) * L ** 4 * Fraction(q ** s, p)
        tail = (16 ** (k * k) * self.power(L, 4 * (k - 1)) * self.power(g, Fraction(-(k + 7), 2))
                * energy * q ** s)

        def rhs(C: Fraction):
            return head * C + tail * C ** (k - 1)

        lhs = tsum_Tk(Q.members, 2 ** k)
        minimal = self.minimal_c_star(lambda C: self.at_most(lhs, rhs(C)))
        return self.decide(params, fingerprint, lhs, rhs(self.c_star), self.at_most(lhs, rhs(self.c_star)),
                           {"gates": gates, "energy": energy, "minimal_c_star": minimal})

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        params = self.generate_invariant(rng, family, p, order, "reps")
        params["k"] = rng.randint(*family.k_range)
        return params


class ExponentialSumCheck(SubgroupCheck):
    """max_{xi != 0} |G^(xi)| << |G| p^{-delta / 2^{7 + 2/delta}}."""

    check_id = "EXP_SUM"
    mode = CheckMode.ESTIMATE_CONSTANT
    statement = "exponential sums over a subgroup"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        p, g = G.modulus, G.order
        fingerprint = {"p": p, "order": g}
        gates = {"nontrivial_subgroup": g >= 2}
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        rho = max_nontrivial_coefficient(G.members)
        threshold = self.config.exp_sums_c * math.log2(p) / math.log2(math.log2(p))
        details = {
            "delta": math.log2(g) / math.log2(p),
            "criterion_c": self.config.exp_sums_c,
            "criterion_holds": math.log2(g) >= threshold,
        }
        return self.estimate(params, fingerprint, rho, g * decay(p, g), details)


class InvariantEnergyCheck(SubgroupCheck):
    """
    For a G-invariant Q, k >= 1, with |Q|^2 |G| <= p^2 and 2^{64k} C^4 <= |G|:
        E_{2^{k+1}}(Q) <= 2^{2^{k+2}+3} L^{2^{k+1}} |Q|^{2^{k+1}}
                          (2^{4k+6} L^4 + 16^{k^2} C^{k-1} L^{4(k-1)} |G|^{-(k+1)/2} p),
    L = log|Q|; and when |G|^{(k+2)/2} >= |Q| L^{4k}:
        E_{2^{k+1}}(Q) <= (2^8 C)^{k+1} |Q|^{2^{k+1}} |G|^{1/2}.
    """

    check_id = "Q_SHIFT_EK"
    group_by = None
    statement = "higher energies of an invariant set"

    def gates(self, p: int, g: int, q: int, k: int) -> Dict[str, bool]:
        return {
            "nondegenerate_logs": q >= 2,
            "sizes_vs_p": q * q * g <= p * p,
            "subgroup_large": self.at_most(Fraction(2) ** (64 * k) * self.c_star ** 4, g),
        }

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        Q = self.invariant(params, G)
        k = param_int(params, "k", default=1, minimum=1)
        p, g, q = G.modulus, G.order, len(Q)
        fingerprint = {"p": p, "order": g, "Q": q, "k": k}
        gates = self.gates(p, g, q, k)
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        s = 2 ** (k + 1)
        L = self.log2(q)
        front = 2 ** (2 ** (k + 2) + 3) * L ** s * q ** s
        tail = 16 ** (k * k) * self.power(L, 4 * (k - 1)) * self.power(g, Fraction(-(k + 1), 2)) * p

        def rhs(C: Fraction):
            return front * (2 ** (4 * k + 6) * L ** 4 + tail * C ** (k - 1))

        lhs = higher_energy_Ek(Q.members, s)
        forms = {"energy": self.at_most(lhs, rhs(self.c_star))}
        second_gate = self.at_least(self.power(g, Fraction(k + 2, 2)), q * L ** (4 * k))
        if second_gate:
            bound = (2 ** 8 * self.c_star) ** (k + 1) * q ** s * self.power(g, Fraction(1, 2))
            forms["energy_large_subgroup"] = self.at_most(lhs, bound)

        details = {
            "gates": gates,
            "forms": forms,
            "minimal_c_star": self.minimal_c_star(lambda C: self.at_most(lhs, rhs(C))),
        }
        return self.decide(params, fingerprint, lhs, rhs(self.c_star), all(forms.values()), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        params = self.generate_invariant(rng, family, p, order, "reps")
        lo, hi = family.k_range
        params["k"] = rng.randint(max(1, lo), max(1, hi))
        return params


class ShiftIntersectionCheck(SubgroupCheck):
    """
    |Q1 cap (Q2 + x)| << sqrt(|Q1||Q2|) log Q p^{-delta / 2^{7 + 2/delta}} for invariant Q1, Q2
    with |Qj|^2 |G| <= p^2, Q = max |Qj|; and << sqrt(|Q1||Q2|) |G|^{-2^{-k}/4} for the least
    k >= 1 with |G|^{(k+2)/2} >= Q log^{4k} Q.
    """

    check_id = "Q_CAP"
    mode = CheckMode.ESTIMATE_CONSTANT
    group_by = None
    statement = "additive shifts of invariant sets"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        Q1 = self.invariant(params, G, "reps")
        Q2 = self.invariant(params, G, "reps2") if "reps2" in params else Q1
        p, g = G.modulus, G.order
        size = max(len(Q1), len(Q2))
        fingerprint = {"p": p, "order": g, "Q1": len(Q1), "Q2": len(Q2)}
        gates = {
            "nontrivial_subgroup": g >= 2,
            "nondegenerate_logs": size >= 2,
            "Q1_vs_p": len(Q1) ** 2 * g <= p * p,
            "Q2_vs_p": len(Q2) ** 2 * g <= p * p,
        }
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        profile = shift_intersection_profile(Q1.members, Q2.members)
        root = math.sqrt(len(Q1) * len(Q2))
        details: Dict[str, Any] = {"argmax": profile.argmax}
        k = second_form_k(g, size)
        details["second_form_k"] = k
        if k is not None:
            details["second_form_constant"] = profile.maximum / (root * g ** (-(2.0 ** -k) / 4))
        shape = root * math.log2(size) * decay(p, g)
        return self.estimate(params, fingerprint, profile.maximum, shape, details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        return self.generate_invariant(rng, family, p, order, "reps", "reps2")


class InvariantMixedEnergyCheck(SubgroupCheck):
    """
    For invariant Q with |Q|^2 |G| <= p^2 and any A:
        E+(A, Q), Ex(A, Q + alpha) << |Q||A|^2 eps log|Q| + |A||Q|,
        |A + Q|, |A(Q + alpha)| >> |Q| min{|A|, eps^{-1} / log|Q|},
    eps = p^{-delta / 2^{7 + 2/delta}}; the second forms use |G|^{-2^{-k}/4} in place of eps log|Q|.
    """

    check_id = "EQA"
    mode = CheckMode.ESTIMATE_CONSTANT
    group_by = None
    statement = "common energy of an invariant set and an arbitrary set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        Q = self.invariant(params, G)
        p, g, q = G.modulus, G.order, len(Q)
        A = param_set(params, "A", p)
        alpha = param_int(params, "alpha", default=1) % p
        fingerprint = {"p": p, "order": g, "Q": q, "A": len(A)}
        gates = {
            "nontrivial_subgroup": g >= 2,
            "nondegenerate_logs": q >= 2,
            "sizes_vs_p": q * q * g <= p * p,
            "nonempty_A": len(A) > 0,
            "alpha_nonzero": alpha != 0,
        }
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        a = len(A)
        eps = decay(p, g)
        log_q = math.log2(q)
        shifted = translate(Q.members, alpha)
        energy_shape = q * a * a * eps * log_q + a * q
        sumset_shape = q * min(a, 1 / (eps * log_q))

        additive = additive_energy(A, Q.members)
        multiplicative = multiplicative_energy(A, shifted)
        sum_size = len(combine(A, Q.members, SetOp.SUM))
        product_size = len(combine(A, shifted, SetOp.PRODUCT))
        constants = {
            "multiplicative": multiplicative / energy_shape,
            "sumset": sum_size / sumset_shape,
            "product_set": product_size / sumset_shape,
        }
        k = second_form_k(g, q)
        if k is not None:
            saving = g ** (-(2.0 ** -k) / 4)
            energy2 = q * a * a * saving + a * q
            sumset2 = q * min(a, 1 / saving)
            constants["additive_second"] = additive / energy2
            constants["multiplicative_second"] = multiplicative / energy2
            constants["sumset_second"] = sum_size / sumset2
            constants["product_set_second"] = product_size / sumset2

        details = {"second_form_k": k, "E_mul": multiplicative, "sumset": sum_size,
                   "product_set": product_size, "constants": constants}
        return self.estimate(params, fingerprint, additive, energy_shape, details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        params = self.generate_invariant(rng, family, p, order, "reps")
        params["A"] = random_set(rng, params["p"], family.set_range)
        params["alpha"] = rng.randint(1, params["p"] - 1)
        return params


class TwoThirdsCheck(SubgroupCheck):
    """
    max_{x != 0} |G cap (G + x)| against |G|^{2/3} for |G| < p^{3/4}, with the exact
    identities R[G] in Q[G] cap (1 - Q[G]), Q[G]G = Q[G] and |Q[G]| <= |G|^3.
    """

    check_id = "TWO_THIRDS"
    mode = CheckMode.ESTIMATE_CONSTANT
    statement = "subgroup shifts against |G|^{2/3}"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        p, g = G.modulus, G.order
        fingerprint = {"p": p, "order": g}
        if g < 2:
            return self.skip(params, fingerprint, {"nontrivial_subgroup": False})

        R = ratio_set_R(G.members)
        Q = quotient_quadruple_Q(G.members)
        identities = {
            "R_in_Q_cap_one_minus_Q": R.issubset(Q.intersection(one_minus(Q))),
            "Q_invariant": combine(Q, G.members, SetOp.PRODUCT) == Q,
            "Q_at_most_cube": len(Q) <= g ** 3,
        }
        details: Dict[str, Any] = {
            "identities": identities,
            "R": len(R),
            "Q": len(Q),
            "R_constant": len(R) * math.log2(g) / g ** 2,
        }
        if not all(identities.values()):
            return self.report(params, fingerprint, Verdict.FAIL, details=details)

        gates = {"nontrivial_subgroup": True, "below_three_quarters": g ** 4 < p ** 3}
        if not gates["below_three_quarters"]:
            return self.skip(params, fingerprint, gates, details)

        profile = shift_intersection_profile(G.members, G.members)
        details["argmax"] = profile.argmax
        return self.estimate(params, fingerprint, profile.maximum, g ** (2 / 3), details)


class HigherEnergyRemarkCheck(SubgroupCheck):
    """E_4(Q) << |Q|^2 E_3(Q) / p + log^4|G| |Q|^4 + log^4|G| |Q|^2 E(Q) |G|^{-1/2}."""

    check_id = "E4_INVARIANT"
    mode = CheckMode.ESTIMATE_CONSTANT
    group_by = None
    statement = "fourth energy of an invariant set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        Q = self.invariant(params, G)
        p, g, q = G.modulus, G.order, len(Q)
        fingerprint = {"p": p, "order": g, "Q": q}
        gates = {"nontrivial_subgroup": g >= 2, "sizes_vs_p": q * q * g <= p * p}
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        e3 = higher_energy_Ek(Q.members, 3)
        energy = additive_energy(Q.members)
        log4 = math.log2(g) ** 4
        shape = q * q * e3 / p + log4 * q ** 4 + log4 * q * q * energy / math.sqrt(g)
        return self.estimate(params, fingerprint, higher_energy_Ek(Q.members, 4), shape,
                             {"E_3": e3, "energy": energy})

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        return self.generate_invariant(rng, family, p, order, "reps")


class BasisCheck(SubgroupCheck):
    """N G = F_p for some N << delta^{-1} 4^{delta^{-1}}."""

    check_id = "BASIS"
    mode = CheckMode.ESTIMATE_CONSTANT
    statement = "subgroups as additive bases"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        p, g = G.modulus, G.order
        fingerprint = {"p": p, "order": g}
        gates = {"nontrivial_subgroup": g >= 2}
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        inverse_delta = math.log2(p) / math.log2(g)
        n = covering_number(G)
        return self.estimate(params, fingerprint, n, inverse_delta * 4 ** inverse_delta,
                             {"delta": 1 / inverse_delta})


class BourgainTkCheck(SubgroupCheck):
    """
    A subgroup has |GG| = |G|, so for every level Q there should be a k with
    T_k(G) < |G|^{2k} (p^{-1+1/Q} + c_Q |G|^{-Q}). Neither k nor c_Q is explicit;
    the ratio is reported next to the explicit TK_SUBGROUP bound.
    """

    check_id = "BOURGAIN_TK"
    mode = CheckMode.ESTIMATE_CONSTANT
    statement = "T_k of sets with small product set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        G = self.subgroup(params)
        k = param_int(params, "k", minimum=1)
        level = param_int(params, "q_level", default=1, minimum=1)
        p, g = G.modulus, G.order
        fingerprint = {"p": p, "order": g, "k": k, "q_level": level}

        shape = float(g) ** (2 * k) * (p ** (-1 + 1 / level) + float(g) ** -level)
        details = {
            "narrative": (
                "subgroups have |GG| = |G|; the implied constant stands in for c_Q, "
                "compare with the explicit TK_SUBGROUP bound at k = log2 of this k"
            ),
        }
        return self.estimate(params, fingerprint, tsum_Tk(G.members, k), shape, details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        params = super().generate(rng, family, p, order)
        params["k"] = rng.randint(*family.k_range)
        params["q_level"] = rng.randint(1, 3)
        return params

