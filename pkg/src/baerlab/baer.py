"""Factorisation predicates and their structural consequences.

The predicates: a factorisation G = AB is p-Baer when every p-element of
A u B has prime-power index in G, and Baer when that holds for every prime.
The checks in this module verify, on concrete groups, the structural
conclusions those predicates force (decomposability, normality of Sylow-core
products, unique index primes, centraliser-index characterisations, and the
coprime direct decomposition of groups in which every prime-power-order
element has prime-power index).

Every check distinguishes ``fail`` (hypotheses met, conclusion false, which
means an engine bug since the conclusions are established facts) from
``not-applicable`` (hypotheses unmet).  Witness lists are canonically sorted
so reports are byte-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CapExceeded, InternalInvariantViolation
from .group import Group, Subgroup, centraliser, class_index
from .numth import (
    PrimePower,
    classify_prime_power,
    is_p_number,
    prime_divisors,
)
from .perm import Permutation, format_cycles, is_p_element
from .reporting import FAIL, NOT_APPLICABLE, PASS, SKIPPED, TheoremReport
from .structure import (
    Factorisation,
    center,
    exponent,
    find_prefactorised_sylow,
    fitting,
    fitting2,
    hall,
    hall_conjugates,
    is_abelian,
    is_normal,
    is_p_decomposable,
    is_nilpotent,
    normal_closure,
    o_p,
    o_p_prime,
    o_pi,
    pi_of,
    quotient_group,
    sylow,
    sylow_conjugates,
    upper_p_series,
)


# -- data types -----------------------------------------------------------------


@dataclass(frozen=True)
class IndexWitness:
    element: Permutation
    locus: str
    index: int
    classification: PrimePower

    def to_json_dict(self) -> dict:
        return {
            "element": format_cycles(self.element),
            "locus": self.locus,
            "index": self.index,
            "prime_power": self.classification.is_prime_power,
        }


@dataclass
class BaerStatus:
    """Verdict of a p-Baer or Baer test, with index witnesses.

    For a single-prime query ``prime`` is set and ``is_baer`` is None; for the
    all-primes query ``is_baer`` is the conjunction over the prime verdicts in
    ``per_prime``.  Witnesses hold the first failure, or one representative
    per distinct (locus, index) pair on success.
    """

    factorisation: Factorisation
    prime: int | None
    is_p_baer: bool | None
    is_baer: bool | None
    witnesses: list = field(default_factory=list)
    per_prime: dict | None = None

    def holds(self) -> bool:
        return self.is_p_baer if self.prime is not None else self.is_baer


@dataclass(frozen=True)
class UniquePrimes:
    """The index primes of the p-elements on each side of a factorisation.

    ``q`` (A side) or ``r`` (B side) is None when every p-element on that
    side is central, leaving the prime unconstrained.
    """

    p: int
    q: int | None
    r: int | None


@dataclass
class BaerDecomposition:
    """Coprime direct decomposition ``G = G_1 x ... x G_r`` by prime blocks."""

    factors: list
    prime_partition: list


# -- element-index profiles --------------------------------------------------------


def _pp_profile(F: Factorisation) -> list:
    """Every nontrivial prime-power-order element of A u B with its index in G.

    Entries are ``(locus, element, order, index)`` sorted by (locus, element),
    computed once per factorisation.
    """
    if "pp_profile" not in F._cache:
        G = F.group
        rows = []
        for locus, sub in F.factors():
            for x in sub.members():
                o = x.order()
                if o == 1 or not classify_prime_power(o).is_prime_power:
                    continue
                rows.append((locus, x, o, class_index(G, x)))
        F._cache["pp_profile"] = rows
    return F._cache["pp_profile"]


def _is_ppow(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _profile_for_prime(F: Factorisation, p: int) -> list:
    return [row for row in _pp_profile(F) if _is_ppow(row[2], p)]


def _status_from_rows(F, p, rows) -> BaerStatus:
    seen_profiles = {}
    for locus, x, _o, idx in rows:
        c = classify_prime_power(idx)
        if not c.is_prime_power:
            return BaerStatus(
                F, p, False, None, witnesses=[IndexWitness(x, locus, idx, c)]
            )
        key = (locus, idx)
        if key not in seen_profiles:
            seen_profiles[key] = IndexWitness(x, locus, idx, c)
    witnesses = [seen_profiles[k] for k in sorted(seen_profiles)]
    return BaerStatus(F, p, True, None, witnesses=witnesses)


def is_p_baer(F: Factorisation, p: int, via: str = "union") -> BaerStatus:
    """Decide whether ``G = AB`` is a p-Baer factorisation.

    ``via="union"`` scans every p-element of A u B; ``via="sylow"`` scans only
    the two Sylow intersections of a prefactorised Sylow p-subgroup, which is
    an equivalent test because Sylow subgroups are conjugate.  The two routes
    must agree; the sweep asserts that.
    """
    key = ("p_baer", p, via)
    if key not in F._cache:
        if via == "union":
            rows = _profile_for_prime(F, p)
        elif via == "sylow":
            P = find_prefactorised_sylow(F, p)
            rows = []
            for locus, sub in F.factors():
                inter = P.intersection(sub)
                for x in inter.members():
                    o = x.order()
                    if o > 1:
                        rows.append((locus, x, o, class_index(F.group, x)))
        else:
            raise ValueError(f"unknown route {via!r}")
        F._cache[key] = _status_from_rows(F, p, rows)
    return F._cache[key]


def is_baer(F: Factorisation) -> BaerStatus:
    """Conjunction of the p-Baer predicate over every prime dividing |G|."""
    if "baer" not in F._cache:
        per_prime = {}
        witnesses = []
        ok = True
        for p in pi_of(F.group):
            st = is_p_baer(F, p)
            per_prime[p] = st.is_p_baer
            if not st.is_p_baer:
                ok = False
                witnesses.extend(st.witnesses)
        if ok:
            witnesses = _status_from_rows(F, None, _pp_profile(F)).witnesses
        F._cache["baer"] = BaerStatus(F, None, None, ok, witnesses=witnesses, per_prime=per_prime)
    return F._cache["baer"]


# -- unique index primes -----------------------------------------------------------


def unique_primes(F: Factorisation, p: int) -> UniquePrimes:
    """The unique primes q (A side) and r (B side) dividing the nontrivial
    indices of p-elements; a second prime on one side is a hard failure."""
    st = is_p_baer(F, p)
    if not st.is_p_baer:
        raise ValueError("unique index primes are only defined for p-Baer factorisations")
    out = {}
    for locus, _sub in F.factors():
        primes = set()
        for row_locus, _x, _o, idx in _profile_for_prime(F, p):
            if row_locus == locus and idx > 1:
                primes.add(classify_prime_power(idx).prime)
        if len(primes) > 1:
            raise InternalInvariantViolation(
                f"two distinct index primes {sorted(primes)} on side {locus}"
            )
        out[locus] = primes.pop() if primes else None
    return UniquePrimes(p, out["A"], out["B"])


# -- equivalence with the Sylow-centraliser predicate ----------------------------------


def check_theorem_f_equivalence(F: Factorisation) -> TheoremReport:
    """Cross-check two independent routes to the Baer property.

    Route 1 is the definition (indices of prime-power-order elements of
    A u B).  Route 2 asks that ``|G : C_G(A_p)|`` and ``|G : C_G(B_p)|`` be
    prime powers for Sylow subgroups A_p of A and B_p of B, for every prime.
    The two routes are equivalent; the report asserts their agreement and,
    on small groups, that the centraliser indices do not depend on the
    Sylow choice.
    """
    G = F.group
    report = TheoremReport("F")
    pred1 = is_baer(F).is_baer
    pred2 = True
    details = []
    for p in sorted(pi_of(G)):
        for locus, sub in F.factors():
            Sp = sylow(sub.as_group(), p)
            idx = G.order // centraliser(G, Sp).order
            ok = classify_prime_power(idx).is_prime_power
            details.append({"prime": p, "locus": locus, "index": idx, "prime_power": ok})
            if not ok:
                pred2 = False
    report.add(
        "equivalence",
        PASS if pred1 == pred2 else FAIL,
        {
            "definition_predicate": pred1,
            "centraliser_predicate": pred2,
            "centraliser_indices": details,
        },
    )
    if G.order <= 500 and G.materializable():
        stable = True
        for p in sorted(pi_of(G)):
            for locus, sub in F.factors():
                view = sub.as_group()
                base = G.order // centraliser(G, sylow(view, p)).order
                for Q in sylow_conjugates(view, p):
                    if G.order // centraliser(G, Q).order != base:
                        stable = False
        report.add("choice-independence", PASS if stable else FAIL, None)
    return report


# -- structural consequences of a p-Baer factorisation -----------------------------------


def report_theorem_a(F: Factorisation, p: int) -> TheoremReport:
    """Structure forced by a p-Baer factorisation.

    Clauses: (1) the quotient by ``C_G(O_p(G))`` is p-decomposable; (2) both
    ``P F(G)`` and ``P O_{p'}(G)`` are normal and G is p-soluble of p-length
    at most 1; (3) the Sylow p-subgroup of ``G/F(G)`` is abelian; (4) P is
    abelian iff ``O_p(G)`` is; (5) a Sylow intersection not centralising
    ``O_p(G)`` centralises every Hall p'-subgroup; (6) if both factors have
    non-abelian Sylow p-subgroups, G is p-decomposable.
    """
    if not is_p_baer(F, p).is_p_baer:
        return TheoremReport.not_applicable("A", p, "not a p-Baer factorisation")
    G = F.group
    report = TheoremReport("A", p)
    P = find_prefactorised_sylow(F, p)
    Op = o_p(G, p)
    C = centraliser(G, Op)

    quotient = quotient_group(G, C)
    report.add(
        "1:central-quotient-p-decomposable",
        PASS if is_p_decomposable(quotient.group, p) else FAIL,
        {"quotient_order": quotient.group.order},
    )

    Fit = fitting(G)
    pf = _product_with_normal(G, P, Fit)
    popp = _product_with_normal(G, P, o_p_prime(G, p))
    series = upper_p_series(G, p)
    ok2 = (
        is_normal(G, pf)
        and is_normal(G, popp)
        and series.is_p_soluble
        and series.p_length <= 1
    )
    report.add(
        "2:sylow-core-products-normal-p-soluble",
        PASS if ok2 else FAIL,
        {
            "PF_order": pf.order,
            "POpprime_order": popp.order,
            "p_length": series.p_length,
            "p_soluble": series.is_p_soluble,
        },
    )

    qf = quotient_group(G, Fit)
    report.add(
        "3:sylow-of-fitting-quotient-abelian",
        PASS if is_abelian(sylow(qf.group, p)) else FAIL,
        {"quotient_order": qf.group.order},
    )

    report.add(
        "4:sylow-abelian-iff-core-abelian",
        PASS if is_abelian(P) == is_abelian(Op) else FAIL,
        {"sylow_abelian": is_abelian(P), "core_abelian": is_abelian(Op)},
    )

    applicable = []
    for locus, sub in F.factors():
        PX = P.intersection(sub)
        if not PX.subset_of(C):
            applicable.append((locus, PX))
    if not applicable:
        report.add("5:sylow-part-centralises-hall", NOT_APPLICABLE,
                   "both Sylow intersections centralise the p-core")
    else:
        H = hall(G, set(pi_of(G)) - {p})
        if H is None:
            report.add(
                "5:sylow-part-centralises-hall",
                FAIL,
                "Hall p'-subgroup not found within budget despite guaranteed existence",
            )
        else:
            ok5 = True
            for locus, PX in applicable:
                pgens = PX.generating_set()
                for Hg in hall_conjugates(G, H):
                    hgens = Hg.generating_set()
                    if not all(a * b == b * a for a in pgens for b in hgens):
                        ok5 = False
            report.add(
                "5:sylow-part-centralises-hall",
                PASS if ok5 else FAIL,
                {"sides": [locus for locus, _ in applicable], "hall_order": H.order},
            )

    SA = sylow(F.a.as_group(), p)
    SB = sylow(F.b.as_group(), p)
    if is_abelian(SA) or is_abelian(SB):
        report.add("6:nonabelian-factor-sylows-force-decomposition", NOT_APPLICABLE,
                   "a factor has an abelian Sylow p-subgroup")
    else:
        report.add(
            "6:nonabelian-factor-sylows-force-decomposition",
            PASS if is_p_decomposable(G, p) else FAIL,
            None,
        )
    return report


def _product_with_normal(G: Group, S: Subgroup, N: Subgroup) -> Subgroup:
    """The subgroup ``S N`` for normal N (a subgroup because N is normal)."""
    K = Subgroup.from_generators(
        G, list(S.generating_set()) + list(N.generating_set())
    )
    if K.order != S.product_order(N):
        raise InternalInvariantViolation("product with a normal subgroup is not its closure")
    return K


def report_theorem_b(F: Factorisation, p: int) -> TheoremReport:
    """Index-prime structure of a p-Baer factorisation.

    After extracting the unique index primes (q, r), checks that P
    centralises the {q,r}-complement of F(G), that ``P O_q(G) O_r(G)`` is
    normal, that q = r = p forces p-decomposability, and that p outside
    {q, r} forces P abelian.  An absent side prime is instantiated with the
    other side's prime (or p), which the established statements allow.
    """
    if not is_p_baer(F, p).is_p_baer:
        return TheoremReport.not_applicable("B", p, "not a p-Baer factorisation")
    G = F.group
    report = TheoremReport("B", p)
    up = unique_primes(F, p)
    present = [x for x in (up.q, up.r) if x is not None]
    q_eff = up.q if up.q is not None else (up.r if up.r is not None else p)
    r_eff = up.r if up.r is not None else (up.q if up.q is not None else p)
    report.add("unique-primes", PASS, {"q": up.q, "r": up.r})

    P = find_prefactorised_sylow(F, p)
    Fit = fitting(G)
    complement = o_pi(Fit.as_group(), set(prime_divisors(Fit.order)) - {q_eff, r_eff})
    pgens = P.generating_set()
    cgens = complement.generating_set()
    report.add(
        "centralises-fitting-complement",
        PASS if all(a * b == b * a for a in pgens for b in cgens) else FAIL,
        {"complement_order": complement.order},
    )

    K = P
    for s in sorted({q_eff, r_eff}):
        K = _product_with_normal(G, K, o_p(G, s))
    report.add(
        "sylow-core-product-normal",
        PASS if is_normal(G, K) else FAIL,
        {"product_order": K.order},
    )

    if not present:
        report.add("1:q-equals-r-equals-p", NOT_APPLICABLE, "no noncentral p-element in either factor")
    elif all(x == p for x in present):
        report.add("1:q-equals-r-equals-p", PASS if is_p_decomposable(G, p) else FAIL, None)
    else:
        report.add("1:q-equals-r-equals-p", NOT_APPLICABLE, "an index prime differs from p")

    if p not in present:
        report.add("2:p-outside-forces-abelian", PASS if is_abelian(P) else FAIL, None)
    else:
        report.add("2:p-outside-forces-abelian", NOT_APPLICABLE, "p occurs as an index prime")
    return report


# -- consequences of a full Baer factorisation ---------------------------------------------


def report_corollary_c(F: Factorisation) -> TheoremReport:
    """Global structure of a Baer factorisation: abelian Fitting quotient,
    the A-group criterion, and the sigma-decomposition along the primes whose
    factor Sylow subgroups are both non-abelian."""
    if not is_baer(F).is_baer:
        return TheoremReport.not_applicable("C", None, "not a Baer factorisation")
    G = F.group
    report = TheoremReport("C")
    qf = quotient_group(G, fitting(G))
    report.add("1:fitting-quotient-abelian", PASS if is_abelian(qf.group) else FAIL,
               {"quotient_order": qf.group.order})

    all_sylow_abelian = all(is_abelian(sylow(G, p)) for p in pi_of(G))
    report.add(
        "2:a-group-iff-abelian-fitting",
        PASS if all_sylow_abelian == is_abelian(fitting(G)) else FAIL,
        {"all_sylow_abelian": all_sylow_abelian, "fitting_abelian": is_abelian(fitting(G))},
    )

    sigma = set()
    for p in pi_of(G):
        if not is_abelian(sylow(F.a.as_group(), p)) and not is_abelian(sylow(F.b.as_group(), p)):
            sigma.add(p)
    Os = o_pi(G, sigma)
    Osp = o_pi(G, set(pi_of(G)) - sigma)
    ok3 = Os.order * Osp.order == G.order and is_nilpotent(Os.as_group())
    report.add("3:sigma-decomposition", PASS if ok3 else FAIL,
               {"sigma": sorted(sigma), "order_sigma": Os.order})

    if sigma == set(pi_of(G)) and G.order > 1:
        report.add("4:all-nonabelian-forces-nilpotent", PASS if is_nilpotent(G) else FAIL, None)
    else:
        report.add("4:all-nonabelian-forces-nilpotent", NOT_APPLICABLE,
                   "some factor Sylow subgroup is abelian")
    return report


def check_factor_inheritance(F: Factorisation) -> TheoremReport:
    """Baer factorisations push index primes down into the factors: a
    prime-power-order element whose G-index is a q-number also has q-number
    index inside its own factor, and both factors are Baer groups."""
    if not is_baer(F).is_baer:
        return TheoremReport.not_applicable("D", None, "not a Baer factorisation")
    report = TheoremReport("D")
    checked = 0
    bad = None
    for locus, sub in F.factors():
        view = sub.as_group()
        for row_locus, x, _o, idx in _pp_profile(F):
            if row_locus != locus:
                continue
            inner = class_index(view, x)
            checked += 1
            if idx == 1:
                ok = inner == 1
            else:
                ok = classify_prime_power(inner).compatible_with(classify_prime_power(idx).prime)
            if not ok and bad is None:
                bad = {"locus": locus, "element": format_cycles(x),
                       "outer_index": idx, "inner_index": inner}
    report.add("1:index-prime-inherited", FAIL if bad else PASS,
               bad or {"elements_checked": checked})

    factors_baer = all(
        is_baer(Factorisation.trivial(sub.as_group())).is_baer for _locus, sub in F.factors()
    )
    report.add("2:factors-are-baer-groups", PASS if factors_baer else FAIL, None)
    return report


def report_theorem_e(F: Factorisation, p: int) -> TheoremReport:
    """Centraliser index of a Sylow subgroup in a Baer factorisation: at most
    two primes divide ``|G : C_G(P)|`` (avoiding p when P is abelian), and the
    quotient by ``C_G(O_p(G))`` is p-decomposable with an abelian p-complement
    touched by at most two primes."""
    if not is_baer(F).is_baer:
        return TheoremReport.not_applicable("E", p, "not a Baer factorisation")
    G = F.group
    report = TheoremReport("E", p)
    P = sylow(G, p)
    idx = G.order // centraliser(G, P).order
    primes = set(prime_divisors(idx))
    if is_abelian(P):
        report.add("1:nonabelian-sylow-index", NOT_APPLICABLE, "Sylow p-subgroup is abelian")
        ok2 = p not in primes and len(primes) <= 2
        report.add("2:abelian-sylow-index", PASS if ok2 else FAIL,
                   {"index": idx, "primes": sorted(primes)})
    else:
        ok1 = len(primes - {p}) <= 1
        report.add("1:nonabelian-sylow-index", PASS if ok1 else FAIL,
                   {"index": idx, "primes": sorted(primes)})
        report.add("2:abelian-sylow-index", NOT_APPLICABLE, "Sylow p-subgroup is not abelian")

    C = centraliser(G, o_p(G, p))
    quotient = quotient_group(G, C)
    comp = o_p_prime(quotient.group, p)
    ok3 = (
        is_p_decomposable(quotient.group, p)
        and is_abelian(comp)
        and len(prime_divisors(comp.order)) <= 2
    )
    report.add("3:central-quotient-shape", PASS if ok3 else FAIL,
               {"quotient_order": quotient.group.order, "complement_order": comp.order})
    return report


# -- coprime direct decompositions ------------------------------------------------------


def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1 :]
        yield [[head]] + part


def _partition_is_coprime_split(G: Group, blocks) -> bool:
    return math.prod(o_pi(G, set(b)).order for b in blocks) == G.order


def baer_decomposition(G: Group):
    """Finest coprime partition of the primes with ``G`` the direct product of
    the corresponding cores, for groups in which every prime-power-order
    element has prime-power index; None when the index condition fails.

    Each non-prime-power-order factor must touch exactly two primes and have
    abelian Sylow subgroups; a violation is an internal red alert.
    """
    key = "baer_decomposition"
    if key in G._cache:
        return G._cache[key]
    if not is_baer(Factorisation.trivial(G)).is_baer:
        G._cache[key] = None
        return None
    primes = list(pi_of(G))
    best = None
    for part in _set_partitions(primes):
        if _partition_is_coprime_split(G, part):
            if best is None or len(part) > len(best):
                best = part
            elif len(part) == len(best) and part != best:
                raise InternalInvariantViolation("two distinct finest coprime partitions")
    if best is None:
        raise InternalInvariantViolation("no coprime partition despite the index condition")
    blocks = sorted([tuple(sorted(b)) for b in best])
    factors = [o_pi(G, set(b)) for b in blocks]
    for block, S in zip(blocks, factors):
        view = S.as_group()
        shape_ok = classify_prime_power(S.order).is_prime_power or (
            len(prime_divisors(S.order)) == 2
            and all(is_abelian(sylow(view, q)) for q in block)
        )
        if not shape_ok:
            raise InternalInvariantViolation(f"decomposition factor of order {S.order} has the wrong shape")
        if not is_normal(G, S):
            raise InternalInvariantViolation("decomposition factor is not normal")
    for i, Si in enumerate(factors):
        for Sj in factors[i + 1 :]:
            gi, gj = Si.generating_set(), Sj.generating_set()
            if not all(a * b == b * a for a in gi for b in gj):
                raise InternalInvariantViolation("decomposition factors do not commute")
    result = BaerDecomposition(factors, [list(b) for b in blocks])
    G._cache[key] = result
    return result


def check_no_coprime_splitting(G: Group) -> bool:
    """True iff no proper bipartition of the primes splits G as ``O_s x O_s'``."""
    primes = list(pi_of(G))
    if len(primes) <= 1:
        return True
    rest = primes[1:]
    for mask in range(1, 1 << len(rest)):
        sigma = {primes[0]} | {rest[i] for i in range(len(rest)) if mask & (1 << i)}
        if sigma == set(primes):
            continue
        if _partition_is_coprime_split(G, [list(sigma), [q for q in primes if q not in sigma]]):
            return False
    return True


# -- unconditional index facts (regression oracles) ----------------------------------------


def check_wielandt(G: Group) -> TheoremReport:
    """A p-element whose index is a p-number lies in ``O_p(G)``; checked for
    every prime and every element."""
    report = TheoremReport("wielandt")
    G.materialize()
    orders = G.element_orders()
    for p in sorted(pi_of(G)):
        core = o_p(G, p)
        bad = None
        checked = 0
        for i, x in enumerate(G.elements):
            if not _is_ppow(orders[i], p):
                continue
            idx = class_index(G, x)
            if not _is_ppow(idx, p):
                continue
            checked += 1
            if x not in core:
                bad = {"element": format_cycles(x), "index": idx}
                break
        report.add(f"p={p}", FAIL if bad else PASS, bad or {"elements_checked": checked})
    return report


def check_camina_camina(G: Group) -> TheoremReport:
    """Every element of prime-power index lies in the second Fitting term."""
    report = TheoremReport("camina-camina")
    G.materialize()
    F2 = fitting2(G)
    bad = None
    checked = 0
    for x in G.elements:
        idx = class_index(G, x)
        if not classify_prime_power(idx).is_prime_power:
            continue
        checked += 1
        if x not in F2:
            bad = {"element": format_cycles(x), "index": idx}
            break
    report.add("prime-power-index-in-F2", FAIL if bad else PASS,
               bad or {"elements_checked": checked, "F2_order": F2.order})
    return report


def check_lemma_bk(G: Group) -> TheoremReport:
    """For noncentral p-elements x, y with prime-power indices of distinct
    primes and ``i(xy)`` a prime power: their normal closure lies in
    ``O_p(G)``, ``i(xy)`` is the maximum of the two and a p-power, and the
    Sylow p-subgroup is non-abelian.  Exhaustive pair scan."""
    report = TheoremReport("berkovich-kazarin")
    G.materialize()
    orders = G.element_orders()
    for p in sorted(pi_of(G)):
        rows = []
        for i, x in enumerate(G.elements):
            if orders[i] == 1 or not _is_ppow(orders[i], p):
                continue
            idx = class_index(G, x)
            if idx == 1:
                continue
            c = classify_prime_power(idx)
            if c.is_prime_power:
                rows.append((i, x, idx, c.prime))
        pairs = 0
        bad = None
        for ai in range(len(rows)):
            for bi in range(ai + 1, len(rows)):
                _i1, x, ix, px = rows[ai]
                _i2, y, iy, py = rows[bi]
                if px == py:
                    continue
                ixy = class_index(G, x * y)
                if not classify_prime_power(ixy).is_prime_power:
                    continue
                pairs += 1
                core = o_p(G, p)
                nc = normal_closure(G, [x, y])
                conclusion = (
                    nc.subset_of(core)
                    and ixy == max(ix, iy)
                    and _is_ppow(ixy, p)
                    and not is_abelian(sylow(G, p))
                )
                if not conclusion and bad is None:
                    bad = {
                        "x": format_cycles(x), "y": format_cycles(y),
                        "ix": ix, "iy": iy, "ixy": ixy,
                    }
        report.add(f"p={p}", FAIL if bad else PASS, bad or {"qualifying_pairs": pairs})
    return report


# -- mixed-prime interplay ---------------------------------------------------------------


def check_pq_baer(F: Factorisation, p: int, q: int) -> TheoremReport:
    """When a factorisation is both p-Baer and q-Baer, with noncentral
    p-elements indexed by q on the A side and by r on the B side, the index
    prime s of the q-elements must lie in {p, r}; and if q = r then s = p and
    a normal Hall {p,q}-subgroup with abelian Sylow subgroups exists."""
    if q == p:
        return TheoremReport.not_applicable("pq-baer", p, "q must differ from p")
    if not is_p_baer(F, p).is_p_baer or not is_p_baer(F, q).is_p_baer:
        return TheoremReport.not_applicable("pq-baer", p, "not a p- and q-Baer factorisation")
    up = unique_primes(F, p)
    if up.q != q or up.r is None:
        return TheoremReport.not_applicable(
            "pq-baer", p, "requires noncentral p-elements with q-indices in A and r-indices in B"
        )
    r = up.r
    uq = unique_primes(F, q)
    s_candidates = {x for x in (uq.q, uq.r) if x is not None}
    if not s_candidates:
        return TheoremReport.not_applicable("pq-baer", p, "all q-elements of the factors are central")
    if len(s_candidates) > 1:
        return TheoremReport.not_applicable(
            "pq-baer", p, "q-element indices are not powers of a single prime"
        )
    s = s_candidates.pop()
    report = TheoremReport("pq-baer", p)
    report.add("a:s-in-p-r", PASS if s in {p, r} else FAIL, {"s": s, "r": r, "q": q})
    if q == r:
        G = F.group
        H = hall(G, {p, q})
        if H is None:
            report.add("b:normal-hall-pq", FAIL, "Hall {p,q}-subgroup not found within budget")
        else:
            ok = (
                s == p
                and is_normal(G, H)
                and is_abelian(sylow(H.as_group(), p))
                and is_abelian(sylow(H.as_group(), q))
            )
            report.add("b:normal-hall-pq", PASS if ok else FAIL,
                       {"s": s, "hall_order": H.order})
    else:
        report.add("b:normal-hall-pq", NOT_APPLICABLE, "q differs from r")
    return report


def check_p_index_decomposition(F: Factorisation, p: int, scope: str = "p-elements") -> TheoremReport:
    """Biconditionals tying index conditions on the factors to decomposability.

    Scope "p-elements": every p-element of A u B has p-number index iff G is
    p-decomposable.  Scope "all prime power": every prime-power-order element
    of A u B has p-number index iff ``G = O_p x O_{p'}`` with ``O_{p'}``
    abelian; on Baer factorisations additionally the quotient by
    ``C_G(O_p(G))`` is p-decomposable with abelian p-complement.
    """
    G = F.group
    report = TheoremReport("p-index-decomposition", p)
    if scope == "p-elements":
        lhs = all(is_p_number(idx, p) for _l, _x, _o, idx in _profile_for_prime(F, p))
        rhs = is_p_decomposable(G, p)
        report.add("biconditional-p-elements", PASS if lhs == rhs else FAIL,
                   {"all_indices_p_numbers": lhs, "p_decomposable": rhs})
    elif scope == "all prime power":
        lhs = all(is_p_number(idx, p) for _l, _x, _o, idx in _pp_profile(F))
        rhs = is_p_decomposable(G, p) and is_abelian(o_p_prime(G, p))
        report.add("biconditional-prime-power", PASS if lhs == rhs else FAIL,
                   {"all_indices_p_numbers": lhs, "decomposed_with_abelian_complement": rhs})
        if is_baer(F).is_baer:
            quotient = quotient_group(G, centraliser(G, o_p(G, p)))
            ok = is_p_decomposable(quotient.group, p) and is_abelian(o_p_prime(quotient.group, p))
            report.add("baer-central-quotient", PASS if ok else FAIL,
                       {"quotient_order": quotient.group.order})
        else:
            report.add("baer-central-quotient", NOT_APPLICABLE, "not a Baer factorisation")
    else:
        raise ValueError(f"unknown scope {scope!r}")
    return report
