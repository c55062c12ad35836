# Checks for sets with small product sets, in F_p and over the rationals

import math
import random
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..bounds import Interval
from ..energy import additive_energy, higher_energy_Ek, multiplicative_energy, tsum_Tk
from ..errors import MalformedParams, TooSmall
from ..sets import (
    PHI_CATALOG, RationalSet, combine, combine_rational, expander_statistic,
    four_variable_set, iterated_sum, product_power, translate,
)
from ..subgroups import shift_intersection_profile, subgroup_of_order
from ..types import CheckMode, CheckReport, InstanceFamily, SetOp
from .base import (
    BaseCheck, Number, param_int, param_prime, param_rational_set, param_set,
    random_order, random_prime, random_set,
)

# T_{2^k} over the rationals is enumerated; at k = 3 the sets stay this small
RATIONAL_T8_MAX_SET = 8


def _ratio(numerator: int, denominator: int) -> Fraction:
    """M = max(1, numerator / denominator)"""
    return max(Fraction(1), Fraction(numerator, denominator))


def _multiplier_set(rng: random.Random, family: InstanceFamily, p: int) -> List[int]:
    """Half the time a subgroup, so that products stay small."""
    if rng.random() < 0.5:
        return list(subgroup_of_order(p, random_order(rng, family, p)).members)
    return random_set(rng, p, family.b_range, nonzero=True)


def _rational_family(rng: random.Random, size: int) -> List[str]:
    """A geometric progression (small product set) or a random set of small integers."""
    if rng.random() < 0.5:
        ratio = rng.choice([Fraction(2), Fraction(3), Fraction(3, 2)])
        return [str(ratio ** i) for i in range(size)]
    return [str(x) for x in sorted(rng.sample(range(1, 8 * size + 1), size))]


class SmallProductCheck(BaseCheck):
    section = "small_products"

    def at_least_min(self, lhs: Number, coefficient: Number, first: Number, second: Number) -> bool:
        """lhs >= coefficient * min{first, second}"""
        return self.at_least(lhs, coefficient * first) or self.at_least(lhs, coefficient * second)

    @staticmethod
    def smaller(first: Number, second: Number) -> Number:
        return first if float(first) <= float(second) else second

    def c_power(self, k: int) -> Interval:
        """C^{(k+4)/4}"""
        return self.power(self.c_star, Fraction(k + 4, 4))


class SmallProductTkCheck(SmallProductCheck):
    """
    |AB| <= M|A|, k >= 2 and 2^{16k} M^{2^{k+1}} C^2 log^8|A| <= |B| give
        T_{2^k}(A) <= 2^{4k+6} C log^4|A| M^{2^k} |A|^{2^{k+1}} / p
                      + 16^{k^2} C^{k-1} M^{2^{k+1}} log^{4(k-1)}|A| |A|^{2^{k+1}-4} |B|^{-(k-1)/2} E+(A).
    """

    check_id = "TK_SMALL_PROD"
    statement = "T_{2^k} of a set with small product set"

    def gates(self, k: int, a: int, b: int, M: Fraction) -> Dict[str, bool]:
        if a < 2:
            return {"k_at_least_2": k >= 2, "nondegenerate_logs": False}
        threshold = Fraction(2) ** (16 * k) * M ** (2 ** (k + 1)) * self.c_star ** 2 * self.log2(a) ** 8
        return {"k_at_least_2": k >= 2, "nondegenerate_logs": True, "B_large": self.at_most(threshold, b)}

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        A = param_set(params, "A", p)
        B = param_set(params, "B", p)
        k = param_int(params, "k", minimum=1)
        a, b = len(A), len(B)
        M = _ratio(len(combine(A, B, SetOp.PRODUCT)), a) if a else Fraction(1)
        fingerprint = {"p": p, "A": a, "B": b, "k": k, "M": M}
        gates = self.gates(k, a, b, M)
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        s = 2 ** (k + 1)
        L = self.log2(a)
        energy = additive_energy(A)
        head = 2 ** (4 * k + 6) * L ** 4 * M ** (2 ** k) * Fraction(a ** s, p)
        tail = (16 ** (k * k) * M ** s * self.power(L, 4 * (k - 1)) * a ** (s - 4)
                * self.power(b, Fraction(-(k - 1), 2)) * energy)

        def rhs(C: Fraction):
            return head * C + tail * C ** (k - 1)

        lhs = tsum_Tk(A, 2 ** k)
        details = {"gates": gates, "energy": energy,
                   "minimal_c_star": self.minimal_c_star(lambda C: self.at_most(lhs, rhs(C)))}
        return self.decide(params, fingerprint, lhs, rhs(self.c_star), self.at_most(lhs, rhs(self.c_star)), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        lo, hi = family.k_range
        return {"p": p, "A": random_set(rng, p, family.set_range), "B": _multiplier_set(rng, family, p),
                "k": rng.randint(max(2, lo), max(2, hi))}


class RationalTkCheck(SmallProductCheck):
    """
    Over the rationals, |AB| <= M|A| and k >= 2 give
        T_{2^k}(A) <= 16^{k^2} C^{k-1} M^{3(2^k-1)/2} log^{4(k-1)}|A| |A|^{2^{k+1}-1} |B|^{-k/2}.
    """

    check_id = "TK_REAL"
    statement = "T_{2^k} of a rational set with small product set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        A = param_rational_set(params, "A")
        B = param_rational_set(params, "B")
        k = param_int(params, "k", minimum=2)
        if k > 3:
            raise MalformedParams("k", f"rational T_{{2^k}} is enumerated for k <= 3, got {k}")
        a, b = len(A), len(B)
        if k == 3 and a > RATIONAL_T8_MAX_SET:
            raise MalformedParams("A", f"k = 3 needs |A| <= {RATIONAL_T8_MAX_SET}, got {a}")
        fingerprint = {"A": a, "B": b, "k": k}
        gates = {"nondegenerate_logs": a >= 2, "nonempty_B": b > 0}
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        M = _ratio(len(combine_rational(A, B, SetOp.PRODUCT)), a)
        fingerprint["M"] = M
        front = (16 ** (k * k) * self.power(M, Fraction(3 * (2 ** k - 1), 2)) * self.power(self.log2(a), 4 * (k - 1))
                 * a ** (2 ** (k + 1) - 1) * self.power(b, Fraction(-k, 2)))

        def rhs(C: Fraction):
            return front * C ** (k - 1)

        lhs = tsum_Tk(A, 2 ** k)
        details = {"minimal_c_star": self.minimal_c_star(lambda C: self.at_most(lhs, rhs(C)))}
        return self.decide(params, fingerprint, lhs, rhs(self.c_star), self.at_most(lhs, rhs(self.c_star)), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        k = rng.randint(2, 3)
        lo, hi = family.set_range
        size = rng.randint(max(2, lo), min(hi, RATIONAL_T8_MAX_SET if k == 3 else hi))
        return {"A": ",".join(_rational_family(rng, size)),
                "B": ",".join(_rational_family(rng, rng.randint(*family.b_range))), "k": k}


class MultipleSumsetCheck(SmallProductCheck):
    """|AA| <= M|A| or |A/A| <= M|A| gives |2^k A| >> |A|^{1+k/2} M^{-3(2^k-1)/2} log^{-4(k-1)}|A|."""

    check_id = "M_COR"
    mode = CheckMode.ESTIMATE_CONSTANT
    statement = "iterated sumsets of a rational set with small product set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        A = param_rational_set(params, "A")
        k = param_int(params, "k", minimum=1)
        a = len(A)
        fingerprint = {"A": a, "k": k}
        gates = {"k_at_least_2": k >= 2, "nondegenerate_logs": a >= 2}
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        products = len(combine_rational(A, A, SetOp.PRODUCT))
        quotients = len(combine_rational(A, A, SetOp.QUOTIENT))
        M = max(1.0, min(products, quotients) / a)
        fingerprint["M"] = M
        lhs = len(iterated_sum(A, 2 ** k))
        shape = a ** (1 + k / 2) * M ** (-1.5 * (2 ** k - 1)) * math.log2(a) ** (-4 * (k - 1))
        return self.estimate(params, fingerprint, lhs, shape, {"AA": products, "A/A": quotients})

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        lo, hi = family.set_range
        k = rng.randint(2, 3)
        size = rng.randint(max(2, lo), min(hi, 8 if k == 3 else hi))
        return {"A": ",".join(_rational_family(rng, size)), "k": k}


class ProductEnergyCheck(SmallProductCheck):
    """
    With |QG^{k+1}||QG^k||G| <= p^2, |QG^k||G| <= p and M = |QG^{k+1}|/|Q|, either
        E_{2^{k+1}}(Q) <= M^{2^k+1} 2^{3k+1} C^{(k+4)/4} log^k|QG^k| |Q|^{2^{k+1}+1} |G|^{-k/8-1/2}
    or E_{2^{k+1}}(Q) <= 2 |QG^k|^{2^{k+1}}.
    The second bound alone also holds, with no condition on p, whenever
        |G|^{k/8+1/2} >= |Q| M^{2^k+1} 2^{3k+1} C^{(k+4)/4} log^k|QG^k|.
    """

    check_id = "QG_EK"
    statement = "higher energies of a set with small product set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        Q = param_set(params, "Q", p)
        G = param_set(params, "G", p)
        k = param_int(params, "k", default=0, minimum=0)
        q, g = len(Q), len(G)
        fingerprint = {"p": p, "Q": q, "G": g, "k": k}
        if not q or not g:
            return self.skip(params, fingerprint, {"nonempty": False})

        level = len(product_power(Q, G, k))
        above = len(product_power(Q, G, k + 1))
        M = Fraction(above, q)
        fingerprint["M"] = M
        gates = {"nonempty": True, "sizes_vs_p_squared": above * level * g <= p * p, "sizes_vs_p": level * g <= p}

        s = 2 ** (k + 1)
        logs = self.log2(level) ** k
        front = M ** (2 ** k + 1) * 2 ** (3 * k + 1) * logs
        scale = self.power(g, -Fraction(k, 8) - Fraction(1, 2))

        def first(C: Fraction) -> Interval:
            return front * self.power(C, Fraction(k + 4, 4)) * q ** (s + 1) * scale

        alias = self.at_least(self.power(g, Fraction(k, 8) + Fraction(1, 2)), q * front * self.c_power(k))
        gated = all(gates.values())
        if not gated and not alias:
            return self.skip(params, fingerprint, gates, {"alias_gate": alias})

        lhs = higher_energy_Ek(Q, s)
        second = 2 * level ** s
        forms: Dict[str, bool] = {}
        holds = True
        if gated:
            forms["first"] = self.at_most(lhs, first(self.c_star))
            forms["second"] = lhs <= second
            holds = forms["first"] or forms["second"]
        if alias:
            forms["in_particular"] = lhs <= second
            holds = holds and forms["in_particular"]

        if gated:
            branch = "first" if forms["first"] else ("second" if forms["second"] else None)
            minimal = self.minimal_c_star(lambda C: forms["second"] or self.at_most(lhs, first(C)))
            rhs = first(self.c_star) if forms["first"] or not forms["second"] else second
        else:
            branch = "in_particular" if holds else None
            minimal = None
            rhs = second
        details = {
            "gates": gates,
            "alias_gate": alias,
            "forms": forms,
            "branch": branch,
            "minimal_c_star": minimal,
        }
        return self.decide(params, fingerprint, lhs, rhs, holds, details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        lo, hi = family.k_range
        return {"p": p, "Q": random_set(rng, p, family.set_range, nonzero=True),
                "G": _multiplier_set(rng, family, p), "k": rng.randint(max(0, lo - 1), hi)}


class ProductShiftCheck(SmallProductCheck):
    """
    For j = 1, 2 let |QjG^{k+2}||QjG^{k+1}||G| <= p^2, |QjG^k||G| <= p, M_* = max |QjG|/|Qj|,
    M = max |QjG^{k+2}|/|Qj| and |G|^{k/8+1/2} >= |Qj| M_* M^{2^k+1} 2^{3k+1} C^{(k+4)/4} log^k|QjG^k|. Then
        |Q1 cap (Q2 + x)| <= 2 M_* M sqrt(|Q1||Q2|) |G|^{-2^{-k}/2}   for x != 0.
    """

    check_id = "Q_CAP_M"
    statement = "additive shifts of sets with small product set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        sets = [param_set(params, "Q1", p), param_set(params, "Q2", p)]
        G = param_set(params, "G", p)
        k = param_int(params, "k", default=0, minimum=0)
        g = len(G)
        fingerprint = {"p": p, "Q1": len(sets[0]), "Q2": len(sets[1]), "G": g, "k": k}
        if not g or not all(len(Q) for Q in sets):
            return self.skip(params, fingerprint, {"nonempty": False})

        towers = [[len(product_power(Q, G, j)) for j in range(k + 3)] for Q in sets]
        M_star = max(Fraction(tower[1], len(Q)) for Q, tower in zip(sets, towers))
        M = max(Fraction(tower[k + 2], len(Q)) for Q, tower in zip(sets, towers))
        fingerprint.update({"M_star": M_star, "M": M})

        gates: Dict[str, bool] = {"nonempty": True}
        budget = self.power(g, Fraction(k, 8) + Fraction(1, 2))
        for j, (Q, tower) in enumerate(zip(sets, towers), start=1):
            gates[f"Q{j}_vs_p_squared"] = tower[k + 2] * tower[k + 1] * g <= p * p
            gates[f"Q{j}_vs_p"] = tower[k] * g <= p
            cost = (len(Q) * M_star * M ** (2 ** k + 1) * 2 ** (3 * k + 1) * self.c_power(k)
                    * self.log2(tower[k]) ** k)
            gates[f"Q{j}_condition"] = self.at_least(budget, cost)
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        profile = shift_intersection_profile(sets[0], sets[1])
        rhs = (2 * M_star * M * self.power(len(sets[0]) * len(sets[1]), Fraction(1, 2))
               * self.power(g, -Fraction(1, 2 ** (k + 1))))
        details = {"gates": gates, "argmax": profile.argmax, "minimal_c_star": None}
        return self.decide(params, fingerprint, profile.maximum, rhs, self.at_most(profile.maximum, rhs), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        lo, hi = family.k_range
        return {"p": p, "Q1": random_set(rng, p, family.set_range, nonzero=True),
                "Q2": random_set(rng, p, family.set_range, nonzero=True),
                "G": _multiplier_set(rng, family, p), "k": rng.randint(max(0, lo - 1), hi)}


class ProductSumsetCheck(SmallProductCheck):
    """
    |QG| <= M|Q|, k >= 1, (2M)^{k+1}|Q||G| <= p and
    |G|^{k/8+1/2} >= |Q| (2M)^{(k+3)2^k} C^{(k+4)/4} log^k((2M)^k|Q|) give, for every A and alpha != 0,
        |A + Q|, |A(Q + alpha)| >= 2^{-3} |Q| min{|A|, 2^{-(4+k)} M^{-(k+3)} |G|^{2^{-k}/2}}.
    """

    check_id = "EQA_M"
    statement = "sumsets with a set of small product set"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        Q = param_set(params, "Q", p)
        G = param_set(params, "G", p)
        A = param_set(params, "A", p)
        alpha = param_int(params, "alpha", default=1) % p
        k = param_int(params, "k", minimum=1)
        q, g, a = len(Q), len(G), len(A)
        fingerprint = {"p": p, "Q": q, "G": g, "A": a, "k": k}
        if not (q and g and a) or not alpha:
            return self.skip(params, fingerprint, {"nonempty": bool(q and g and a), "alpha_nonzero": alpha != 0})

        M = _ratio(len(combine(Q, G, SetOp.PRODUCT)), q)
        fingerprint["M"] = M
        cost = (q * (2 * M) ** ((k + 3) * 2 ** k) * self.c_power(k) * self.log2((2 * M) ** k * q) ** k)
        gates = {
            "nonempty": True,
            "alpha_nonzero": True,
            "sizes_vs_p": (2 * M) ** (k + 1) * q * g <= p,
            "condition": self.at_least(self.power(g, Fraction(k, 8) + Fraction(1, 2)), cost),
        }
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        coefficient = Fraction(q, 8)
        cap = Fraction(1, 2 ** (4 + k)) / M ** (k + 3) * self.power(g, Fraction(1, 2 ** (k + 1)))
        sumset = len(combine(A, Q, SetOp.SUM))
        product = len(combine(A, translate(Q, alpha), SetOp.PRODUCT))
        forms = {
            "sumset": self.at_least_min(sumset, coefficient, a, cap),
            "product_set": self.at_least_min(product, coefficient, a, cap),
        }
        details = {"gates": gates, "forms": forms, "product_set": product, "minimal_c_star": None}
        return self.decide(params, fingerprint, sumset, coefficient * self.smaller(a, cap), all(forms.values()),
                           details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        return {"p": p, "Q": random_set(rng, p, family.set_range, nonzero=True),
                "G": _multiplier_set(rng, family, p), "A": random_set(rng, p, family.c_range),
                "alpha": rng.randint(1, p - 1), "k": rng.randint(*family.k_range)}


class ProductShiftMoreCheck(SmallProductCheck):
    """
    |Q'| = |Q|, |QG|, |Q'G| <= M|Q|, k >= 1, (2M)^{k+1}|Q||G| <= p and
    |G|^{k/8 + 1/(2(k+4))} >= |Q| M^{(k+3)2^k} C^{(k+4)/4} log^k(|G|^{k 2^{-k}/(2(k+4))} |Q|) give
        |Q cap (Q' + x)| <= 4M|Q| |G|^{-2^{-k}/(2(k+4))}   for x != 0.
    """

    check_id = "QM_SHIFT"
    statement = "shifts of sets whose product with G is small"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        Q = param_set(params, "Q", p)
        Q2 = param_set(params, "Q2", p)
        G = param_set(params, "G", p)
        k = param_int(params, "k", minimum=1)
        q, g = len(Q), len(G)
        fingerprint = {"p": p, "Q": q, "Q2": len(Q2), "G": g, "k": k}
        basic = {"nonempty": bool(q and g), "equal_sizes": q == len(Q2)}
        if not all(basic.values()):
            return self.skip(params, fingerprint, basic)

        M = _ratio(max(len(combine(Q, G, SetOp.PRODUCT)), len(combine(Q2, G, SetOp.PRODUCT))), q)
        fingerprint["M"] = M
        saving = Fraction(1, 2 ** k * 2 * (k + 4))
        log_argument = k * saving * self.log2(g) + self.log2(q)
        cost = q * M ** ((k + 3) * 2 ** k) * self.c_power(k) * log_argument ** k
        gates = dict(basic)
        gates["sizes_vs_p"] = (2 * M) ** (k + 1) * q * g <= p
        gates["condition"] = self.at_least(self.power(g, Fraction(k, 8) + Fraction(1, 2 * (k + 4))), cost)
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates)

        profile = shift_intersection_profile(Q, Q2)
        rhs = 4 * M * q * self.power(g, -saving)
        details = {"gates": gates, "argmax": profile.argmax, "minimal_c_star": None}
        return self.decide(params, fingerprint, profile.maximum, rhs, self.at_most(profile.maximum, rhs), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        Q = random_set(rng, p, family.set_range, nonzero=True)
        Q2 = sorted(rng.sample(range(1, p), len(Q)))
        return {"p": p, "Q": Q, "Q2": Q2, "G": _multiplier_set(rng, family, p),
                "k": rng.randint(*family.k_range)}


class AsymmetricSumProductCheck(SmallProductCheck):
    """
    For k >= 1 with |A||B|^{1 + (k+1)2^{-k}/(2(k+4))} <= p and
    |B|^{k/8 + 1/(2(k+4))} >= |A| C^{(k+4)/4} log^k(|A||B|), and alpha != 0:
        max{|AB|, |A + C|}, max{|AB|, |(A + alpha)C|} >= 2^{-3} |A| min{|C|, |B|^{2^{-k}/(2(k+4))}};
    when further |B|^{k/8 - 1/4 + 1/(4(k+4))} >= |A| C^{(k+4)/4} log^k(|A||B|):
        |AB| + |A|^2|C|^2 / E+(A, C), |AB| + |A|^2|C|^2 / Ex(A + alpha, C)
            >= 2^{-4} |A| min{|C|, |B|^{2^{-k}/(4(k+4))}}.
    """

    check_id = "ABC"
    statement = "asymmetric sum-product bounds"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        p = param_prime(params)
        A = param_set(params, "A", p)
        B = param_set(params, "B", p)
        C = param_set(params, "C", p)
        alpha = param_int(params, "alpha", default=1) % p
        k = param_int(params, "k", minimum=1)
        a, b, c = len(A), len(B), len(C)
        fingerprint = {"p": p, "A": a, "B": b, "C": c, "k": k}
        if not (a and b and c) or not alpha:
            return self.skip(params, fingerprint, {"nonempty": bool(a and b and c), "alpha_nonzero": alpha != 0})

        e = Fraction(1, 2 ** k * 2 * (k + 4))
        cost = a * self.c_power(k) * self.log2(a * b) ** k
        gates = {
            "nonempty": True,
            "alpha_nonzero": True,
            "sizes_vs_p": self.at_most(a * self.power(b, 1 + (k + 1) * e), p),
            "condition": self.at_least(self.power(b, Fraction(k, 8) + Fraction(1, 2 * (k + 4))), cost),
        }
        # the introduction states the same condition
        alias = gates["condition"]
        if not all(gates.values()):
            return self.skip(params, fingerprint, gates, {"alias_gate": alias})

        shifted = translate(A, alpha)
        product = len(combine(A, B, SetOp.PRODUCT))
        sumset = len(combine(A, C, SetOp.SUM))
        shifted_product = len(combine(shifted, C, SetOp.PRODUCT))
        cap = self.power(b, e)
        coefficient = Fraction(a, 8)
        forms = {
            "sum": self.at_least_min(max(product, sumset), coefficient, c, cap),
            "shifted_product": self.at_least_min(max(product, shifted_product), coefficient, c, cap),
        }
        energy_gate = self.at_least(self.power(b, Fraction(k, 8) - Fraction(1, 4) + Fraction(1, 4 * (k + 4))), cost)
        if energy_gate:
            half_cap = self.power(b, e / 2)
            mass = a * a * c * c
            forms["additive_energy"] = self.at_least_min(
                product + Fraction(mass, additive_energy(A, C)), Fraction(a, 16), c, half_cap)
            forms["multiplicative_energy"] = self.at_least_min(
                product + Fraction(mass, multiplicative_energy(shifted, C)), Fraction(a, 16), c, half_cap)

        details = {"gates": gates, "alias_gate": alias, "energy_gate": energy_gate, "forms": forms,
                   "minimal_c_star": None}
        lhs = max(product, sumset)
        return self.decide(params, fingerprint, lhs, coefficient * self.smaller(c, cap), all(forms.values()), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        p = random_prime(rng, family, p)
        return {"p": p, "A": random_set(rng, p, family.set_range), "B": _multiplier_set(rng, family, p),
                "C": random_set(rng, p, family.c_range), "alpha": rng.randint(1, p - 1),
                "k": rng.randint(*family.k_range)}


class ExpanderCheck(SmallProductCheck):
    """|R[A] phi(A)| >> |A|^{2+kappa}; with B, C, D the four-variable set is used instead."""

    check_id = "EXPANDER"
    mode = CheckMode.ESTIMATE_CONSTANT
    group_by = "n"
    statement = "superquadratic expander"

    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        if "A" in params:
            A = param_rational_set(params, "A")
        else:
            A = RationalSet.interval(param_int(params, "n", minimum=0))
        phi = str(params.get("phi", "identity"))
        if phi not in PHI_CATALOG:
            raise MalformedParams("phi", f"expected one of {sorted(PHI_CATALOG)}, got {phi!r}")
        n = len(A)
        fingerprint = {"n": n, "phi": phi}

        extra = [name for name in ("B", "C", "D") if name in params]
        if extra:
            if len(extra) != 3:
                raise MalformedParams("B", "B, C and D are given together")
            B, C, D = (param_rational_set(params, name) for name in ("B", "C", "D"))
            gates = {"equal_sizes": len(B) == len(C) == len(D) == n, "nondegenerate_logs": n >= 2}
            if not all(gates.values()):
                return self.skip(params, fingerprint, gates)
            size = len(four_variable_set(A, B, C, D))
            details = {"exponent": math.log(size) / math.log(n) if size else None, "four_variable": True}
            return self.estimate(params, fingerprint, size, float(n * n), details)

        try:
            stat = expander_statistic(A, phi)
        except TooSmall:
            return self.skip(params, fingerprint, {"at_least_3": False})
        details = {
            "exponent": stat.exponent,
            "R": stat.size_r,
            "R_constant": stat.size_r * math.log2(n) / n ** 2,
        }
        return self.estimate(params, fingerprint, stat.size_r_phi_a, float(n * n), details)

    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        lo, hi = family.set_range
        if rng.random() < 0.5:
            return {"n": rng.randint(max(3, lo), max(3, hi)), "phi": rng.choice(sorted(PHI_CATALOG))}
        size = rng.randint(max(3, lo), max(3, hi))
        return {"A": ",".join(_rational_family(rng, size)), "phi": "identity"}
