"""Exact-integer sieve for flag-transitive 2-designs with unitary socle.

Everything here is integer arithmetic: group orders, point counts
v = |X| / |H cap X|, upper bounds u_r for the replication number, the
admissible parameter scan and the elimination verdict for each case.  The
shipped case file ``data/tables456.json`` lists the subgroup cases together
with the printed v and u_r values they are checked against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from math import factorial, gcd, prod

from .ffield import FieldError, is_prime, prime_power

SCHEMA = 1
FAMILIES = ("PSU", "SU", "GU", "PSL2", "Sp", "dihedral", "symmetric", "explicit")
STATUSES = ("Eliminated", "SurvivesArithmetic", "NeedsGroupCheck")


class SieveError(ValueError):
    pass


class NotEmbeddable(SieveError):
    pass


# -- group orders ---------------------------------------------------------------

@dataclass(frozen=True)
class GroupOrderSpec:
    family: str
    n: int = 0
    q: int = 0
    explicit_order: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SieveError(f"unknown family {self.family!r}")

    @classmethod
    def from_dict(cls, d):
        return cls(d["family"], int(d.get("n", 0)), int(d.get("q", 0)), d.get("explicit_order"))

    def to_dict(self):
        d = {"family": self.family}
        if self.n:
            d["n"] = self.n
        if self.q:
            d["q"] = self.q
        if self.explicit_order is not None:
            d["explicit_order"] = self.explicit_order
        return d

    def __str__(self):
        if self.family in ("PSU", "SU", "GU", "Sp"):
            return f"{self.family}({self.n},{self.q})"
        if self.family == "PSL2":
            return f"PSL(2,{self.q})"
        if self.family == "dihedral":
            return f"D{self.n}"
        if self.family == "symmetric":
            return f"Sym({self.n})"
        return str(self.explicit_order)


def _check_q(q):
    try:
        return prime_power(q)
    except FieldError as exc:
        raise SieveError(str(exc)) from None


def _unitary_product(n, q, start):
    return prod(q ** i - (-1) ** i for i in range(start, n + 1))


def group_orders(spec: GroupOrderSpec) -> int:
    f, n, q = spec.family, spec.n, spec.q
    if f in ("PSU", "SU", "GU"):
        if n < 2:
            raise SieveError(f"{f} needs n >= 2, got {n}")
        _check_q(q)
        su = q ** (n * (n - 1) // 2) * _unitary_product(n, q, 2)
        if f == "SU":
            return su
        if f == "GU":
            return su * (q + 1)
        return su // gcd(n, q + 1)
    if f == "PSL2":
        _check_q(q)
        return q * (q * q - 1) // gcd(2, q - 1)
    if f == "Sp":
        if n < 2 or n % 2:
            raise SieveError(f"Sp needs even n >= 2, got {n}")
        _check_q(q)
        m = n // 2
        return q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    if f == "dihedral":
        # D_n has order n (so D10 is dihedral of order 10)
        if n < 4 or n % 2:
            raise SieveError(f"dihedral order must be even and >= 4, got {n}")
        return n
    if f == "symmetric":
        if n < 1:
            raise SieveError(f"symmetric group needs n >= 1, got {n}")
        return factorial(n)
    if spec.explicit_order is None or spec.explicit_order < 1:
        raise SieveError("explicit family needs a positive explicit_order")
    return int(spec.explicit_order)


def psu_order(n: int, q: int) -> int:
    return group_orders(GroupOrderSpec("PSU", n, q))


def out_order(n: int, q: int) -> int:
    """|Out(PSU(n, q))|: 2a*gcd(n, q+1) for n >= 3, a*gcd(2, q-1) for n = 2."""
    p, a = _check_q(q)
    if (n, q) == (3, 2):
        raise SieveError("PSU(3, 2) is solvable; its outer automorphism group is not defined here")
    if n == 2:
        return a * gcd(2, q - 1)
    if n < 2:
        raise SieveError(f"n must be >= 2, got {n}")
    return 2 * a * gcd(n, q + 1)


def p_part(x: int, p: int) -> int:
    out = 1
    while x % p == 0:
        x //= p
        out *= p
    return out


def largest_prime_factor(x: int) -> int:
    best, d = 1, 2
    while d * d <= x:
        while x % d == 0:
            best, x = d, x // d
        d += 1
    return max(best, x) if x > 1 else best


def divisors(x: int) -> list:
    small = [d for d in range(1, int(x ** 0.5) + 2) if d * d <= x and x % d == 0]
    return sorted(set(small + [x // d for d in small]))


# -- cases and verdicts ------------------------------------------------------------

@dataclass(frozen=True)
class SieveCase:
    socle: GroupOrderSpec
    h_order: int
    out_order: int
    p: int
    parabolic: bool = False
    subdegree_divisor: int | None = None
    label: str = ""
    table: int = 0
    line: int = 0
    h_label: str = ""
    bound_rule: str = "gcd"
    v_paper: int | None = None
    u_r_paper: int | None = None
    status_paper: str | None = None

    def __post_init__(self):
        if self.h_order < 1 or group_orders(self.socle) % self.h_order:
            raise SieveError(f"{self.label or self.socle}: |H cap X| = {self.h_order} "
                             f"does not divide |X| = {group_orders(self.socle)}")
        if self.bound_rule not in ("gcd", "prime"):
            raise SieveError(f"unknown bound rule {self.bound_rule!r}")
        if not is_prime(self.p):
            raise SieveError(f"characteristic {self.p} is not prime")

    @property
    def key(self):
        return (self.table, self.line)


@dataclass
class SieveVerdict:
    v: int
    u_r: int
    status: str
    rule: str
    witness: dict = field(default_factory=dict)
    params: list = field(default_factory=list)
    u_r_gcd: int | None = None

    def to_dict(self):
        return {"v": self.v, "u_r": self.u_r, "status": self.status, "rule": self.rule,
                "witness": self.witness, "params": [list(p) for p in self.params],
                "u_r_gcd": self.u_r_gcd}


# Cases that survive arithmetic, or are families not settled by one integer
# check, and are eliminated by a structural argument instead.
EXCEPTIONS = {
    (5, 1): "PSU(3,3) has no subgroup of index 42, so no block-transitive (36,42,7,6,1) design",
    (4, 10): "Sym(4)-normalizer family over all q = +-11, +-19 mod 40; arithmetic covers q <= 24 only",
}


def point_count(case: SieveCase) -> int:
    order = group_orders(case.socle)
    if order % case.h_order:
        raise SieveError(f"{case.h_order} does not divide {order}")
    return order // case.h_order


def gcd_bound(v: int, case: SieveCase) -> int:
    """gcd(v-1, |H cap X| * |Out|), p-part removed for non-parabolic H, and
    intersected with the subdegree divisor when known."""
    m = case.h_order * case.out_order
    if not case.parabolic:
        m //= p_part(m, case.p)
    u = gcd(v - 1, m)
    if case.subdegree_divisor:
        u = gcd(u, case.subdegree_divisor)
    return u


def replication_bound(v: int, case: SieveCase) -> int:
    """Upper bound u_r for r under the case's rule.

    ``gcd``: see :func:`gcd_bound`.  ``prime``: r is a prime dividing
    |H cap X|, so u_r is its largest prime factor.
    """
    if v < 2:
        raise SieveError(f"v must be >= 2, got {v}")
    if case.bound_rule == "prime":
        return largest_prime_factor(case.h_order)
    return gcd_bound(v, case)


def admissible_parameters(v: int, r_candidates) -> list:
    """All (v,b,r,k,lambda) with r from the candidates passing the 2-design
    divisibility and inequality conditions, sorted."""
    from .designlib import DesignParams

    if v < 5:
        raise SieveError(f"v must be >= 5, got {v}")
    out = []
    for r in sorted(set(r_candidates)):
        if r < 1 or (v - 1) % r:
            continue
        for k in range(3, min(r, v - 2) + 1):
            num = r * (k - 1)
            if num % (v - 1):
                continue
            lam = num // (v - 1)
            if lam < 1 or gcd(r, lam) != 1 or lam * v >= r * r or (v * r) % k:
                continue
            out.append(DesignParams(v, v * r // k, r, k, lam))
    return sorted(out, key=lambda p: p.as_tuple())


def prune_case(case: SieveCase) -> SieveVerdict:
    v = point_count(case)
    u = replication_bound(v, case)
    u_gcd = gcd_bound(v, case)
    witness = {"v": v, "u_r": u}
    params = admissible_parameters(v, divisors(u_gcd)) if v >= 5 and u * u > v else []
    if v >= u * u:
        verdict = SieveVerdict(v, u, "Eliminated", "lambda*v < r^2 fails: v >= u_r^2",
                               witness, [], u_gcd)
    elif not params:
        verdict = SieveVerdict(v, u, "Eliminated", "no admissible parameters",
                               dict(witness, r_candidates=divisors(u_gcd)), [], u_gcd)
    else:
        verdict = SieveVerdict(v, u, "SurvivesArithmetic", "admissible parameters exist",
                               witness, [p.as_tuple() for p in params], u_gcd)
    if case.key in EXCEPTIONS:
        verdict.witness = dict(verdict.witness, arithmetic=verdict.status)
        verdict.status = "NeedsGroupCheck"
        verdict.rule = "exception: " + EXCEPTIONS[case.key]
    return verdict


# -- Table 2 and Table 3 formulas -------------------------------------------------------

SUBDEGREE_ROWS = ("C1_N", "C2_GU_wr", "C2_GU1_wr", "C2_GL", "C2_dihedral_minus", "C3_dihedral_plus")


def subdegree_divisor(row: str, n: int, q: int, m: int | None = None, t: int | None = None) -> int:
    """Divisor d of every subdegree for the subgroup types of the subdegree table."""
    _check_q(q)

    def eps(e):
        return q ** e - (-1) ** e

    if row == "C1_N":
        if n < 3 or m is None or not 1 <= m < n:
            raise SieveError("C1_N needs n >= 3 and 1 <= m < n")
        return eps(m) * eps(n - m)
    if row == "C2_GU_wr":
        if n < 3 or m is None or t is None or m * t != n or t < 2:
            raise SieveError("C2_GU_wr needs n >= 3 and n = m*t with t >= 2")
        return t * (t - 1) * eps(m) ** 2
    if row == "C2_GU1_wr":
        if n < 3:
            raise SieveError("C2_GU1_wr needs n >= 3")
        return n * (n - 1) * (n - 2) * (q + 1) ** 3 // 2
    if row == "C2_GL":
        if n < 4 or n % 2:
            raise SieveError("C2_GL needs n = 2m")
        return 2 * (q ** n - 1)
    if row == "C2_dihedral_minus":
        if n != 2:
            raise SieveError("dihedral rows need n = 2")
        return q - 1
    if row == "C3_dihedral_plus":
        if n != 2:
            raise SieveError("dihedral rows need n = 2")
        return q + 1
    raise SieveError(f"unknown subdegree row {row!r}; expected one of {SUBDEGREE_ROWS}")


def minimal_degree(n: int, q: int) -> int:
    """Minimal permutation degree of PSU(n, q)."""
    _check_q(q)
    if n >= 5:
        if n % 6 == 0 and q == 2:
            return 2 ** (n - 1) * (2 ** n - 1) // 3
        return (q ** n - (-1) ** n) * (q ** (n - 1) - (-1) ** (n - 1)) // (q * q - 1)
    if n == 4:
        return (q + 1) * (q ** 3 + 1)
    if n == 3:
        if q == 2:
            raise SieveError("PSU(3, 2) is not simple")
        return 50 if q == 5 else q ** 3 + 1
    raise SieveError(f"no minimal-degree row for n = {n}")


def analytic_bounds(kind: str, a: int, q: int) -> dict:
    """Exact evaluation of the order bracket (a = n) or the product bound (a = m)."""
    _check_q(q)
    if kind == "psu_order_bracket":
        n = a
        if n < 3:
            raise SieveError("the order bracket needs n >= 3")
        lower = (q - 1) * q ** (n * n - 3)  # (1 - 1/q) q^(n^2 - 2)
        upper = (q + 1) * (q * q - 1) * (q ** 3 + 1) * q ** (n * n - 6)
        value = psu_order(n, q)
        gu = group_orders(GroupOrderSpec("GU", n, q))
        return {"lower": lower, "value": value, "gu": gu, "upper": upper,
                "holds": lower < value <= gu <= upper}
    if kind == "product_bound":
        m = a
        if m < 3:
            raise SieveError("the product bound needs m >= 3")
        value = _unitary_product(m, q, 2)
        upper = q ** ((m * m + m - 2) // 2)
        return {"value": value, "upper": upper, "holds": value < upper}
    raise SieveError(f"unknown bound kind {kind!r}")


def symmetric_extension(params):
    """Parameters of the symmetric design a 2-design with r = k + lambda,
    lambda <= 2 embeds in."""
    from .designlib import DesignParams

    v, b, r, k, lam = params.as_tuple()
    if r != k + lam or lam > 2:
        raise NotEmbeddable(f"needs r = k + lambda and lambda <= 2, got r={r}, k={k}, lambda={lam}")
    n = v + k + lam
    return DesignParams(n, n, k + lam, k + lam, lam)


def order_inequalities(g_order: int, h_order: int, h_order_p_part: int) -> dict:
    if h_order < 1 or g_order % h_order:
        raise SieveError(f"{h_order} does not divide {g_order}")
    if h_order_p_part < 1 or h_order % h_order_p_part:
        raise SieveError(f"{h_order_p_part} does not divide {h_order}")
    h_pp = h_order // h_order_p_part
    return {"large_cubed": g_order <= h_order ** 3,
            "p_prime_bound": g_order < h_order * h_pp * h_pp}


H_CLASSES = ("C1_parabolic", "C1_nonsingular", "C2_GU_wr", "C2_GL", "C3_GU",
             "C4", "C5_GU", "C5_O", "C5_Sp", "C7")


def small_p_part_filter(n: int, q: int, h_class: str, h_p_part: int | None = None,
                        m: int | None = None, t: int | None = None) -> dict:
    """Whether a geometric subgroup type can have |H cap X|_p < |Out(X)|.

    The check evaluates the lower bound for |H cap X|_p used for that type
    against |Out(X)|; only the wreath type with m = 1, the GL(2, q^2) type and
    the field-extension type with m = 1 can survive.  When ``h_p_part`` is
    given it must itself be below |Out(X)|.
    """
    if n < 3:
        raise SieveError("the filter needs n >= 3")
    if h_class == "C6" or h_class not in H_CLASSES:
        raise SieveError(f"unsupported class {h_class!r}; expected one of {H_CLASSES}")
    p, a = _check_q(q)
    out = out_order(n, q)
    among = False
    if h_class in ("C1_parabolic", "C1_nonsingular"):
        lhs = q ** (n * (n - 1) // 2)
    elif h_class == "C2_GU_wr":
        m = 1 if m is None else m
        if n % m:
            raise SieveError(f"m = {m} does not divide n = {n}")
        lhs = q ** (n * (m - 1) // 2)
        among = m == 1
    elif h_class == "C2_GL":
        if n % 2:
            raise SieveError("the GL type needs n even")
        m = n // 2
        # m = 2 is compared as q < 2a*gcd(4, q+1); larger m as q^(m(m-1))
        lhs = q if m == 2 else q ** (m * (m - 1))
        among = m == 2
    elif h_class == "C3_GU":
        m = 1 if m is None else m
        if n % m or not is_prime(n // m) or (n // m) % 2 == 0:
            raise SieveError(f"n/m must be an odd prime, got n={n}, m={m}")
        lhs = q ** (n * (m - 1) // 2)
        among = m == 1
    elif h_class == "C4":
        if m is None or t is None or m * t != n:
            raise SieveError("C4 needs n = m*t")
        lhs = q ** ((m * m - m + t * t - t) // 2)
    elif h_class == "C5_GU":
        if t is None:
            raise SieveError("C5_GU needs the subfield degree t")
        root = round(q ** (1 / t))
        q0 = next((c for c in (root - 1, root, root + 1) if c > 1 and c ** t == q), None)
        if q0 is None:
            raise SieveError(f"{q} is not a {t}-th power")
        lhs = q0 ** (n * (n - 1) // 2)
    elif h_class == "C5_O":
        if n % 2 or q % 2 == 0:
            raise SieveError("the orthogonal type needs n even and q odd")
        mm = n // 2
        lhs = q ** (mm * mm - mm)
    elif h_class == "C5_Sp":
        if n % 2:
            raise SieveError("the symplectic type needs n even")
        lhs = q ** ((n // 2) ** 2)
    else:  # C7
        if m is None or t is None or m ** t != n:
            raise SieveError("C7 needs n = m^t")
        lhs = q ** (m * t * (m - 1) // 2)
    holds = lhs < out
    survives = among and holds
    if h_p_part is not None:
        survives = survives and h_p_part < out
    return {"survives": survives, "lhs": lhs, "out": out, "inequality_holds": holds}


# -- case file --------------------------------------------------------------------------

def case_from_dict(d: dict) -> SieveCase:
    socle = GroupOrderSpec.from_dict(d["socle"])
    q = socle.q
    p, _ = _check_q(q)
    if "out_order" in d:
        out = int(d["out_order"])
    else:
        out = out_order(socle.n if socle.family != "PSL2" else 2, q)
    return SieveCase(
        socle=socle, h_order=int(d["h_order"]), out_order=out, p=p,
        parabolic=bool(d.get("parabolic", False)),
        subdegree_divisor=d.get("subdegree_divisor"),
        label=d.get("label", ""), table=int(d["table"]), line=int(d["line"]),
        h_label=d.get("h_label", ""), bound_rule=d.get("bound_rule", "gcd"),
        v_paper=d.get("v_paper"), u_r_paper=d.get("u_r_paper"),
        status_paper=d.get("status_paper"))


def scan_cases(d: dict) -> list:
    """Expand a family row: one case per prime power q <= q_max in the residues."""
    scan = d["scan"]
    out = []
    for q in range(2, int(scan["q_max"]) + 1):
        if scan.get("prime_q") and not is_prime(q):
            continue
        if q % int(scan["modulus"]) not in scan["residues"]:
            continue
        row = dict(d)
        row.pop("scan")
        row["socle"] = dict(d["socle"], q=q)
        row["label"] = f"{d.get('label', '')} q={q}"
        out.append(case_from_dict(row))
    return out


def default_case_path():
    return resources.files("flagdesign").joinpath("data", "tables456.json")


def load_cases(path=None) -> list:
    """Rows of the case file as dicts (scan rows are kept unexpanded)."""
    if path is None:
        text = default_case_path().read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise SieveError(f"unsupported case-file schema {data.get('schema')!r}")
    return data["cases"]


@dataclass
class RowResult:
    table: int
    line: int
    label: str
    v: int | None
    v_paper: int | None
    u_r: int | None
    u_r_paper: int | None
    status: str
    status_paper: str | None
    rule: str
    details: list = field(default_factory=list)

    @property
    def matches(self):
        return (self.v == self.v_paper and self.u_r == self.u_r_paper
                and (self.status_paper is None or self.status == self.status_paper))

    def to_dict(self):
        return {"table": self.table, "line": self.line, "label": self.label,
                "v": self.v, "v_paper": self.v_paper, "u_r": self.u_r,
                "u_r_paper": self.u_r_paper, "status": self.status,
                "status_paper": self.status_paper, "rule": self.rule,
                "matches": self.matches, "details": self.details}


def evaluate_row(d: dict) -> RowResult:
    if "scan" in d:
        cases = scan_cases(d)
        verdicts = [prune_case(c) for c in cases]
        details = [dict(v.to_dict(), q=c.socle.q) for c, v in zip(cases, verdicts)]
        key = (int(d["table"]), int(d["line"]))
        status = "NeedsGroupCheck" if key in EXCEPTIONS else (
            "Eliminated" if all(v.status == "Eliminated" for v in verdicts) else "SurvivesArithmetic")
        rule = ("exception: " + EXCEPTIONS[key]) if key in EXCEPTIONS else "scan"
        return RowResult(key[0], key[1], d.get("label", ""), None, d.get("v_paper"),
                         None, d.get("u_r_paper"), status, d.get("status_paper"), rule, details)
    case = case_from_dict(d)
    verdict = prune_case(case)
    return RowResult(case.table, case.line, case.label, verdict.v, case.v_paper, verdict.u_r,
                     case.u_r_paper, verdict.status, case.status_paper, verdict.rule,
                     [verdict.to_dict()])


def run_sieve(rows=None) -> list:
    rows = load_cases() if rows is None else rows
    results = [evaluate_row(d) for d in rows]
    return sorted(results, key=lambda r: (r.table, r.line))


TSV_COLUMNS = ("table", "line", "v_computed", "v_paper", "u_r_computed", "u_r_paper", "status", "rule")


def report_tsv(results) -> str:
    def cell(x):
        return "-" if x is None else str(x)

    lines = ["\t".join(TSV_COLUMNS)]
    for r in results:
        lines.append("\t".join(cell(x) for x in (r.table, r.line, r.v, r.v_paper, r.u_r,
                                                   r.u_r_paper, r.status, r.rule)))
    return "\n".join(lines) + "\n"
