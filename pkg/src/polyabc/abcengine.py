"""Verification engine for the sum-zero ABC inequalities.

Pipeline for one vanishing sum: partition the index set by minimal dependent
subsets (circuit search on the coefficient vectors), build one nonvanishing
generalized Wronskian per part with the guaranteed derivative step, pool the
derivative multi-indices, and read the explicit constants off the pool:

    a     largest pooled weight,
    b     total pooled weight,
    a_bar sum of the top min(k, d) - 1 pooled weights,
    sigma largest power of p at most the largest pooled component.

Inequalities carrying an O(1) term are certified at the asymptotic-slope
(degree) level, exactly, plus a sampled margin table; the reported margin is
RHS - LHS, so a final slope >= 0 certifies the bounded form.  Instances whose
functions split into several minimal vanishing subsums are processed block by
block and recombined with the largest truncation level and the smallest log
coefficient, which is the only combination the block inequalities support.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import CasError
from .hasse import exponents_divisible
from .mvpoly import MvPoly, exact_div, poly_gcd
from .nevanlinna import PiecewiseLinear, counting, norm_profile
from .radicals import radical, sigma_radical_gcd, square_free_part, trunc_gcd
from .wronskian import (WronskianCertificate, collection_independence_index, f_rank,
                        field_rank, coeff_vector_basis, find_certificate)

MAX_FUNCTIONS = 13  # exhaustive subset searches stop making sense beyond n = 12
DEFAULT_RHOS = tuple(Fraction(x) for x in (-2, -1, 0, 1, 2, 3, 5, 8))


# ---------------------------------------------------------------------------
# subset utilities (all deterministic: by size, then lexicographic)

def _subsets(indices, min_size=1, max_size=None):
    indices = sorted(indices)
    max_size = len(indices) if max_size is None else max_size
    for size in range(min_size, max_size + 1):
        yield from combinations(indices, size)


def _sum_of(fs, idxs) -> MvPoly:
    acc = MvPoly.zero(fs[0].spec, fs[0].m)
    for i in idxs:
        acc = acc + fs[i]
    return acc


def _gcd_of(fs, idxs) -> MvPoly:
    acc = None
    for i in idxs:
        acc = fs[i] if acc is None else poly_gcd(acc, fs[i])
        if acc.is_constant():
            break
    return acc.normalized()


def _guard(fs):
    if len(fs) > MAX_FUNCTIONS:
        raise CasError("GUARD_EXCEEDED",
                       f"{len(fs)} functions exceed the exhaustive-search guard")


# ---------------------------------------------------------------------------
# linear structure: circuits and the partition of a vanishing sum

def _rank_of_subset(rows, idxs) -> int:
    return field_rank([rows[i] for i in idxs])


def _circuits(fs):
    """Minimal linearly dependent index sets, in (size, lex) order."""
    _, rows = coeff_vector_basis(fs)
    n = len(fs)
    out = []
    for sub in _subsets(range(n), min_size=1):
        r = _rank_of_subset(rows, sub)
        if r == len(sub):
            continue
        if r == len(sub) - 1 and all(
                _rank_of_subset(rows, sub[:i] + sub[i + 1:]) == len(sub) - 1
                for i in range(len(sub))):
            out.append(tuple(sub))
    return out


@dataclass
class BmPartition:
    """Partition I_0, ..., I_{u-1} with bridge sets J_l inside earlier parts,
    such that I_0 and each I_j + J_{j-1} is a minimal dependent set."""

    I_sets: list
    J_sets: list
    u: int


def bm_partition(fs) -> BmPartition:
    """Greedy circuit cover of a vanishing sum with no vanishing subsum.

    Picks the (size, lex)-first circuit as I_0, then repeatedly the first
    circuit meeting both the processed and unprocessed index sets; the
    no-vanishing-subsum hypothesis guarantees such a crossing circuit exists
    at every stage.
    """
    _guard(fs)
    n = len(fs)
    if not _sum_of(fs, range(n)).is_zero():
        raise CasError("NOT_SUM_ZERO", "the functions do not sum to zero")
    for sub in _subsets(range(n), min_size=1, max_size=n - 1):
        if _sum_of(fs, sub).is_zero():
            raise CasError("VANISHING_SUBSUM",
                           f"proper subsum over {list(sub)} vanishes; split first")
    circuits = _circuits(fs)
    if not circuits:
        raise CasError("NOT_SUM_ZERO", "no dependent subset in a vanishing sum")
    I_sets = [list(circuits[0])]
    J_sets = []
    covered = set(circuits[0])
    while len(covered) < n:
        for c in circuits:
            cs = set(c)
            inside = cs & covered
            outside = cs - covered
            if inside and outside:
                I_sets.append(sorted(outside))
                J_sets.append(sorted(inside))
                covered |= outside
                break
        else:
            raise CasError("PARTITION_FAILURE",
                           "no crossing circuit; vanishing-subsum hypothesis violated")
    return BmPartition(I_sets=I_sets, J_sets=J_sets, u=len(I_sets))


def split_vanishing_subsums(fs):
    """Partition of the index set into minimal vanishing subsums."""
    _guard(fs)
    n = len(fs)
    if not _sum_of(fs, range(n)).is_zero():
        raise CasError("NOT_SUM_ZERO", "the functions do not sum to zero")
    remaining = list(range(n))
    blocks = []
    while remaining:
        found = None
        for sub in _subsets(remaining, min_size=1):
            if _sum_of(fs, sub).is_zero():
                found = list(sub)
                break
        if found is None:
            raise CasError("NOT_SUM_ZERO", "remainder does not sum to zero")
        blocks.append(found)
        remaining = [i for i in remaining if i not in set(found)]
    return blocks


# ---------------------------------------------------------------------------
# constants

@dataclass
class AbcConstants:
    d: int
    c: int
    a: int
    b: int
    a_bar: int
    sigma: int | None
    k: int
    k_bar: int
    gammas_used: list
    s_index: int | None

    def check_invariants(self, p: int | None):
        q = -(-self.a // self.c)  # ceil(a / c)
        chain_low = self.a * q - q * (q - 1) * self.c // 2
        problems = []
        if not (1 <= self.a <= self.c * (self.d - 1)):
            problems.append(f"a = {self.a} outside [1, c(d-1)] = [1, {self.c * (self.d - 1)}]")
        if not (self.b >= chain_low >= self.a):
            problems.append(f"b = {self.b} below the step-chain bound {chain_low}")
        abar_cap = self.c * sum(self.d - i for i in range(1, self.k_bar))
        if self.k_bar >= 2 and not (self.a_bar <= abar_cap):
            problems.append(f"a_bar = {self.a_bar} above cap {abar_cap}")
        if not (self.b >= self.a_bar >= self.a >= 1):
            problems.append(f"chain b >= a_bar >= a >= 1 fails: {self.b}, {self.a_bar}, {self.a}")
        if p is not None and self.sigma is not None and not (p ** self.sigma <= self.a):
            problems.append(f"p^sigma = {p ** self.sigma} exceeds a = {self.a}")
        if problems:
            raise CasError("CONSTANT_INVARIANT", "; ".join(problems))

    def as_dict(self):
        return {"d": self.d, "c": self.c, "a": self.a, "b": self.b,
                "a_bar": self.a_bar, "sigma": self.sigma, "k": self.k, "k_bar": self.k_bar}


def detect_k(fs, indices=None, max_k=None) -> int | None:
    """Smallest k with every k-subset gcd equal to 1, None if none exists."""
    idxs = sorted(indices if indices is not None else range(len(fs)))
    hi = max_k if max_k is not None else len(idxs)
    for k in range(2, hi + 1):
        if all(_gcd_of(fs, sub).is_constant() for sub in combinations(idxs, k)):
            return k
    return None


@dataclass
class BlockAnalysis:
    indices: list
    all_constant: bool
    constants: AbcConstants | None = None
    partition: BmPartition | None = None
    certificates: list = field(default_factory=list)  # (label, global indices, certificate)
    wronskian_product: MvPoly | None = None


def analyze_block(fs, indices=None, k_override=None) -> BlockAnalysis:
    """Partition + certificates + constants for one minimal vanishing sum."""
    idxs = sorted(indices if indices is not None else range(len(fs)))
    sub = [fs[i] for i in idxs]
    spec = sub[0].spec
    if all(f.is_constant() for f in sub):
        return BlockAnalysis(indices=idxs, all_constant=True)
    d = f_rank(sub)
    if spec.characteristic == 0:
        s_index, c = None, 1
    else:
        s_index = collection_independence_index(sub)
        c = spec.p ** (s_index - 1)
    part = bm_partition(sub)
    certs = []
    pool = []
    for j, I in enumerate(part.I_sets):
        if j == 0:
            pivot = min(I)
            members = [i for i in I if i != pivot]
        else:
            members = list(I)
        if not members:
            raise CasError("PARTITION_FAILURE", "empty certificate block")
        cert = find_certificate([sub[i] for i in members], c)
        certs.append((f"W{j}", [idxs[i] for i in members], cert))
        pool.extend(cert.gammas[1:])
    pool.sort(key=lambda g: (sum(g), g))
    if not pool:
        raise CasError("CONSTANT_INVARIANT",
                       "empty multi-index pool; hypotheses exclude this")
    a = sum(pool[-1])
    b = sum(sum(g) for g in pool)
    if k_override is not None:
        k = k_override
    else:
        k = detect_k(fs, idxs)
        if k is None:
            k = len(idxs)  # only the full set has gcd 1 (guaranteed for blocks)
    k_bar = min(k, d)
    top = pool[::-1][:max(k_bar - 1, 0)]
    a_bar = sum(sum(g) for g in top)
    sigma = None
    if spec.characteristic:
        max_comp = max(max(g) for g in pool)
        sigma = 0
        while spec.p ** (sigma + 1) <= max_comp:
            sigma += 1
    consts = AbcConstants(d=d, c=c, a=a, b=b, a_bar=a_bar, sigma=sigma, k=k,
                          k_bar=k_bar, gammas_used=list(pool), s_index=s_index)
    consts.check_invariants(spec.characteristic or None)
    wprod = MvPoly.one(spec, sub[0].m)
    for _, _, cert in certs:
        wprod = wprod * cert.determinant
    return BlockAnalysis(indices=idxs, all_constant=False, constants=consts,
                         partition=part, certificates=certs, wronskian_product=wprod)


def abc_constants(fs) -> AbcConstants:
    """Constants for a vanishing sum with no vanishing proper subsum."""
    return analyze_block(fs).constants


# ---------------------------------------------------------------------------
# reporting structures

@dataclass
class AbcReport:
    instance_id: str
    check: str
    hypotheses: list = field(default_factory=list)
    verdict: str = "HOLDS"
    constants: dict | None = None
    blocks: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    margins: list = field(default_factory=list)
    margin_tables: dict = field(default_factory=dict)
    degree_checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add_hypothesis(self, name: str, ok: bool, witness: str = ""):
        self.hypotheses.append({"name": name, "ok": bool(ok), "witness": witness})
        if not ok:
            self.verdict = "HYPOTHESIS_VIOLATED"
        return ok

    def add_degree_check(self, name: str, lhs: int, rhs: int):
        ok = lhs <= rhs
        self.degree_checks[name] = {"lhs": lhs, "rhs": rhs, "slack": rhs - lhs, "ok": ok}
        if not ok:
            self.verdict = "INEQUALITY_FAILED"
        return ok

    def add_margin(self, name: str, margin: PiecewiseLinear, rhos, primary=False):
        samples = [[_frac_str(r), _frac_str(margin.value(r))] for r in rhos]
        self.margin_tables[name] = {"samples": samples,
                                    "final_slope": _frac_str(margin.final_slope)}
        if primary:
            self.margins = samples

    @property
    def exit_code(self) -> int:
        if self.verdict == "HOLDS":
            return 0
        if self.verdict == "HYPOTHESIS_VIOLATED":
            return 2
        return 1

    def as_dict(self) -> dict:
        return {
            "id": self.instance_id,
            "check": self.check,
            "hypotheses": self.hypotheses,
            "constants": self.constants,
            "certificates": self.certificates,
            "margins": self.margins,
            "margin_tables": self.margin_tables,
            "degree_checks": self.degree_checks,
            "blocks": self.blocks,
            "notes": self.notes,
            "verdict": self.verdict,
        }


def _frac_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _cert_dict(label, indices, cert: WronskianCertificate):
    return {"block": label,
            "function_indices": list(indices),
            "gammas": [list(g) for g in cert.gammas],
            "step": cert.step_c,
            "determinant": str(cert.determinant)}


def _max_deg(fs) -> int:
    return max(f.total_degree() for f in fs)


def _max_log_profile(fs) -> PiecewiseLinear:
    return PiecewiseLinear.max_of([norm_profile(f) for f in fs])


# ---------------------------------------------------------------------------
# the basic three-function theorem

def verify_basic_abc(f0: MvPoly, f1: MvPoly, rhos=None, instance_id="") -> AbcReport:
    """Degree-level and sampled-margin check of the three-function inequality."""
    rhos = list(rhos) if rhos else list(DEFAULT_RHOS)
    rep = AbcReport(instance_id=instance_id, check="basic")
    spec = f0.spec
    f2 = f0 + f1
    rep.add_hypothesis("f0_nonzero", not f0.is_zero())
    rep.add_hypothesis("f1_nonzero", not f1.is_zero())
    if rep.verdict != "HOLDS":
        return rep
    g = poly_gcd(f0, f1)
    if not rep.add_hypothesis("coprime", g.is_constant(), witness=str(g)):
        return rep
    rep.add_hypothesis("sum_nonzero", not f2.is_zero())
    if rep.verdict != "HOLDS":
        return rep
    if spec.characteristic == 0:
        ok = not (f0.is_constant() and f1.is_constant())
        rep.add_hypothesis("one_nonconstant", ok)
    else:
        # p-th powers over the coefficient closure: support divisible by p
        ok = not (exponents_divisible(f0, 1) and exponents_divisible(f1, 1))
        rep.add_hypothesis("one_not_pth_power", ok)
    if rep.verdict != "HOLDS":
        return rep
    F = f0 * f1 * f2
    R = radical(F)
    lhs = _max_deg([f0, f1, f2])
    rep.add_degree_check("basic", lhs, R.total_degree() - 1)
    margin = (norm_profile(R) + PiecewiseLinear.line(-1, 0)) - _max_log_profile([f0, f1, f2])
    rep.add_margin("basic", margin, rhos, primary=True)
    rep.notes.append(f"radical_degree={R.total_degree()}")
    return rep


# ---------------------------------------------------------------------------
# shared hypothesis checks for the sum-zero theorems

def _common_gates(rep: AbcReport, fs) -> bool:
    _guard(fs)
    rep.add_hypothesis("size", len(fs) >= 3,
                       witness=f"{len(fs)} functions")
    rep.add_hypothesis("sum_zero", _sum_of(fs, range(len(fs))).is_zero())
    rep.add_hypothesis("none_zero", not any(f.is_zero() for f in fs))
    if rep.verdict != "HOLDS":
        return False
    rep.add_hypothesis("not_all_constant", not all(f.is_constant() for f in fs))
    return rep.verdict == "HOLDS"


def _subsum_gcd_condition(fs):
    """The weak coprimality condition: every vanishing subsum has gcd 1."""
    for sub in _subsets(range(len(fs)), min_size=2):
        if _sum_of(fs, sub).is_zero():
            g = _gcd_of(fs, sub)
            if not g.is_constant():
                return False, f"subsum {list(sub)} vanishes with gcd {g}"
    return True, ""


def _analyze_blocks(rep: AbcReport, fs, blocks):
    analyses = []
    for block in blocks:
        ana = analyze_block(fs, block)
        analyses.append(ana)
        if ana.all_constant:
            rep.blocks.append({"indices": ana.indices, "all_constant": True})
            continue
        rep.blocks.append({"indices": ana.indices, "all_constant": False,
                           "constants": ana.constants.as_dict()})
        for label, members, cert in ana.certificates:
            rep.certificates.append(_cert_dict(label, members, cert))
    live = [a for a in analyses if not a.all_constant]
    if not live:
        raise CasError("CONSTANT_INVARIANT", "every block is constant yet not all functions are")
    return analyses, live


def _aggregate_constants(live) -> dict:
    agg = {
        "d": None, "c": None,
        "a": max(a.constants.a for a in live),
        "b": min(a.constants.b for a in live),
        "a_bar": max(a.constants.a_bar for a in live),
        "sigma": None,
        "k": None, "k_bar": None,
    }
    sigmas = [a.constants.sigma for a in live if a.constants.sigma is not None]
    if sigmas:
        agg["sigma"] = max(sigmas)
    return agg


def _divisibility_ledger(rep: AbcReport, fs, live, g_for):
    """Assert F_B divides (product of block Wronskians) * (product of G_j)."""
    for ana in live:
        prod = ana.wronskian_product
        block_F = MvPoly.one(fs[0].spec, fs[0].m)
        for i in ana.indices:
            prod = prod * g_for[i]
            block_F = block_F * fs[i]
        try:
            exact_div(prod, block_F)
        except CasError as exc:
            raise CasError("LEDGER_FAILURE",
                           f"block {ana.indices}: F does not divide W*G") from exc
    rep.notes.append("divisibility_ledger=ok")


# ---------------------------------------------------------------------------

def verify_abc_first(fs, rhos=None, instance_id="") -> AbcReport:
    """Sum form: max log|f_j| <= sum_j N_{G_j} - b log r + O(1)."""
    rhos = list(rhos) if rhos else list(DEFAULT_RHOS)
    rep = AbcReport(instance_id=instance_id, check="first")
    fs = list(fs)
    if not _common_gates(rep, fs):
        return rep
    ok, witness = _subsum_gcd_condition(fs)
    if not rep.add_hypothesis("vanishing_subsum_gcd", ok, witness=witness):
        return rep
    blocks = split_vanishing_subsums(fs)
    analyses, live = _analyze_blocks(rep, fs, blocks)
    spec = fs[0].spec
    charp = spec.characteristic > 0

    block_of = {}
    for ana in live:
        for i in ana.indices:
            block_of[i] = ana

    g_charp = {}
    g_trunc = {}
    for i, f in enumerate(fs):
        ana = block_of.get(i)
        if ana is None or f.is_constant():
            g_charp[i] = MvPoly.one(spec, f.m)
            g_trunc[i] = MvPoly.one(spec, f.m)
            continue
        consts = ana.constants
        g_trunc[i] = trunc_gcd(f, consts.a)
        g_charp[i] = sigma_radical_gcd(f, consts.a, consts.sigma) if charp else g_trunc[i]

    b_star = min(a.constants.b for a in live)
    lhs_deg = _max_deg(fs)
    rhs_charp = sum(g.total_degree() for g in g_charp.values()) - b_star
    rep.notes.append("g_degrees=" + ",".join(
        str(g_charp[i].total_degree()) for i in range(len(fs))))
    rep.add_degree_check("sum_charp" if charp else "sum", lhs_deg, rhs_charp)
    if charp:
        rhs_trunc = sum(g.total_degree() for g in g_trunc.values()) - b_star
        rep.add_degree_check("sum_truncated", lhs_deg, rhs_trunc)

    total_n = None
    for g in g_charp.values():
        prof = counting(g).integrated if not g.is_constant() else PiecewiseLinear.line(0, 0)
        total_n = prof if total_n is None else total_n + prof
    margin = total_n + PiecewiseLinear.line(-b_star, 0) - _max_log_profile(fs)
    rep.add_margin("sum_margin", margin, rhos, primary=True)

    _divisibility_ledger(rep, fs, live, g_charp)
    if len(blocks) > 1:
        agg = _aggregate_constants(live)
        rep.notes.append(
            f"multi_block: max a_bar={agg['a_bar']} min b={agg['b']} reported separately")
        rep.constants = agg if len(live) > 1 else live[0].constants.as_dict()
    else:
        rep.constants = live[0].constants.as_dict()
    return rep


def verify_abc_second(fs, k=None, rhos=None, instance_id="") -> AbcReport:
    """Product form: max log|f_j| <= N^(a_bar)_F - b log r + O(1), plus the
    squarefree corollary and, in characteristic 0 at k = 3, the
    (2n-3)(deg R(F) - 1) bound."""
    rhos = list(rhos) if rhos else list(DEFAULT_RHOS)
    rep = AbcReport(instance_id=instance_id, check="second")
    fs = list(fs)
    if not _common_gates(rep, fs):
        return rep
    spec = fs[0].spec
    n = len(fs) - 1
    auto_k = detect_k(fs)
    if k is None:
        k = auto_k if auto_k is not None and auto_k <= n else None
        if k is None:
            rep.add_hypothesis("k_subset_gcd", False,
                               witness="no level k <= n has all k-subset gcds equal to 1")
            return rep
        rep.notes.append(f"k_autodetected={k}")
    else:
        if not 2 <= k <= n:
            rep.add_hypothesis("k_range", False, witness=f"k={k} outside [2, {n}]")
            return rep
        bad = next((sub for sub in combinations(range(len(fs)), k)
                    if not _gcd_of(fs, sub).is_constant()), None)
        if not rep.add_hypothesis("k_subset_gcd", bad is None,
                                  witness=f"gcd over {list(bad)} nontrivial" if bad else ""):
            return rep
    d = f_rank(fs)
    k_bar = min(k, d)
    blocks = split_vanishing_subsums(fs)
    multi = len(blocks) > 1
    if k_bar > 2:
        if not rep.add_hypothesis("no_vanishing_subsum", not multi,
                                  witness=f"blocks {blocks}" if multi else ""):
            _abcsf_section(rep, fs, None, d, k_bar, rhos, blocks)
            return rep

    if spec.characteristic == 0:
        c_global, s_index = 1, None
    else:
        s_index = collection_independence_index(fs)
        c_global = spec.p ** (s_index - 1)

    if not multi:
        ana = analyze_block(fs, k_override=k)
        rep.blocks.append({"indices": ana.indices, "all_constant": False,
                           "constants": ana.constants.as_dict()})
        for label, members, cert in ana.certificates:
            rep.certificates.append(_cert_dict(label, members, cert))
        live = [ana]
        a_bar = ana.constants.a_bar
        b_star = ana.constants.b
        rep.constants = ana.constants.as_dict()
    else:
        # every non-constant block must support a coprimality level of its own
        for block in blocks:
            sub = [fs[i] for i in block]
            if all(f.is_constant() for f in sub):
                continue
            if len(block) < 3 or detect_k(fs, block, max_k=len(block) - 1) is None:
                rep.add_hypothesis(
                    "block_coprimality", False,
                    witness=f"block {block} admits no internal coprimality level")
                _abcsf_section(rep, fs, c_global, d, k_bar, rhos, blocks)
                return rep
        analyses, live = _analyze_blocks(rep, fs, blocks)
        a_bar = max(a.constants.a_bar for a in live)
        b_star = min(a.constants.b for a in live)
        agg = _aggregate_constants(live)
        agg.update({"d": d, "c": c_global, "k": k, "k_bar": k_bar})
        rep.constants = agg
        rep.notes.append(
            f"multi_block: per-index constants max a_bar={a_bar}, min b={b_star}; "
            "no relation between them is asserted")

    F = fs[0]
    for f in fs[1:]:
        F = F * f
    G = trunc_gcd(F, a_bar)
    lhs_deg = _max_deg(fs)
    rep.notes.append(f"product_truncation_degree={G.total_degree()}")
    rep.add_degree_check("product", lhs_deg, G.total_degree() - b_star)
    margin = (counting(G).integrated + PiecewiseLinear.line(-b_star, 0)
              - _max_log_profile(fs))
    rep.add_margin("product_margin", margin, rhos, primary=True)
    _abcsf_section(rep, fs, c_global, d, k_bar, rhos, blocks, F=F)
    if spec.characteristic == 0 and k == 3:
        _bb_section(rep, fs, rhos, F=F)
    return rep


def _abcsf_section(rep: AbcReport, fs, c_global, d, k_bar, rhos, blocks, F=None):
    """Squarefree-part corollary: max log|f_j| <= A (N^(1)_F - log r) + O(1)."""
    spec = fs[0].spec
    if c_global is None:
        c_global = 1 if spec.characteristic == 0 else spec.p ** (
            collection_independence_index(fs) - 1)
    if len(blocks) > 1:
        ok, witness = _subsum_gcd_condition(fs)
        if not ok:
            rep.notes.append(f"squarefree_corollary_skipped: {witness}")
            return
    big_a = c_global * sum(d - i for i in range(1, k_bar))
    if big_a < 1:
        rep.notes.append("squarefree_corollary_skipped: empty truncation bound")
        return
    if F is None:
        F = fs[0]
        for f in fs[1:]:
            F = F * f
    S = square_free_part(F)
    lhs_deg = _max_deg(fs)
    rep.add_degree_check("squarefree_corollary", lhs_deg,
                         big_a * (S.total_degree() - 1))
    margin = ((counting(S).integrated + PiecewiseLinear.line(-1, 0)).scale(big_a)
              - _max_log_profile(fs))
    rep.add_margin("squarefree_margin", margin, rhos)
    rep.notes.append(f"squarefree_corollary_bound={big_a}")


def _bb_section(rep: AbcReport, fs, rhos, F):
    """Characteristic-0 triple-gcd bound: max deg <= (2n-3)(deg R(F) - 1)."""
    ok, witness = _subsum_gcd_condition(fs)
    if not ok:
        rep.notes.append(f"triple_bound_skipped: {witness}")
        return
    n = len(fs) - 1
    R = radical(F)
    rep.add_degree_check("triple_gcd_bound", _max_deg(fs),
                         (2 * n - 3) * (R.total_degree() - 1))


def verify_corollaries(fs, rhos=None, instance_id="") -> AbcReport:
    """Characteristic-0 corollaries: the exact degree bound through the
    truncated radical degrees, and the full sweep over truncation levels A."""
    rhos = list(rhos) if rhos else list(DEFAULT_RHOS)
    rep = AbcReport(instance_id=instance_id, check="corollaries")
    fs = list(fs)
    if fs and fs[0].spec.characteristic != 0:
        raise CasError("WRONG_CHARACTERISTIC", "these corollaries are characteristic-0 statements")
    if not _common_gates(rep, fs):
        return rep
    ok, witness = _subsum_gcd_condition(fs)
    if not rep.add_hypothesis("vanishing_subsum_gcd", ok, witness=witness):
        return rep
    blocks = split_vanishing_subsums(fs)
    analyses, live = _analyze_blocks(rep, fs, blocks)
    spec = fs[0].spec
    block_of = {}
    for ana in live:
        for i in ana.indices:
            block_of[i] = ana

    # exact bound via gcd(f_j, R(f_j)^a), with a taken from the block that
    # realizes the maximal degree
    lhs_deg = _max_deg(fs)
    j0 = max(range(len(fs)), key=lambda i: fs[i].total_degree())
    a0 = block_of[j0].constants.a
    r_values = []
    for f in fs:
        if f.is_constant():
            r_values.append(0)
        else:
            r_values.append(trunc_gcd(f, a0).total_degree())
    rep.add_degree_check("radical_truncation_exact", lhs_deg,
                         sum(r_values) - a0 * (a0 + 1) // 2)
    rep.notes.append(f"r_a_degrees={r_values} a={a0}")
    for ana in live:
        a_b = ana.constants.a
        block_lhs = max(fs[i].total_degree() for i in ana.indices)
        block_rhs = sum(
            0 if fs[i].is_constant() else trunc_gcd(fs[i], a_b).total_degree()
            for i in ana.indices) - a_b * (a_b + 1) // 2
        rep.add_degree_check(f"radical_truncation_block_{ana.indices[0]}",
                             block_lhs, block_rhs)

    # sweep over admissible truncation levels A in [d, n - C]
    d = f_rank(fs)
    n = len(fs) - 1
    n_const = sum(1 for f in fs if f.is_constant())
    radical_degs = [0 if f.is_constant() else radical(f).total_degree() for f in fs]
    sweep = []
    for A in range(d, n - n_const + 1):
        rhs = A * sum(radical_degs) - A * (A + 1) // 2
        sweep.append({"A": A, "rhs": rhs, "ok": lhs_deg <= rhs})
        rep.add_degree_check(f"level_sweep_A{A}", lhs_deg, rhs)
    if not sweep:
        rep.notes.append(f"level_sweep_skipped: empty range [d, n-C] = [{d}, {n - n_const}]")
    else:
        total_n1 = None
        for f in fs:
            prof = (PiecewiseLinear.line(0, 0) if f.is_constant()
                    else counting(radical(f)).integrated)
            total_n1 = prof if total_n1 is None else total_n1 + prof
        A = d
        margin = ((total_n1 + PiecewiseLinear.line(Fraction(-(A + 1), 2), 0)).scale(A)
                  - _max_log_profile(fs))
        rep.add_margin("level_sweep_margin", margin, rhos, primary=True)
    if len(live) > 1:
        rep.constants = _aggregate_constants(live)
    else:
        rep.constants = live[0].constants.as_dict()
    return rep
