"""Eventually periodic points of 2^omega, FIN and I_3 membership, the
M/A hierarchy combinators, index transfer and section assembly."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Callable, Mapping, Sequence

from .words import pair, phi, phi_inv, unpair


# -- eventually periodic points -------------------------------------------

def _primitive_root(w: str) -> str:
    n = len(w)
    for k in range(1, n + 1):
        if n % k == 0 and w[:k] * (n // k) == w:
            return w[:k]
    return w


@dataclass(frozen=True)
class EpPoint:
    """prefix followed by period repeated forever, kept in canonical form."""

    prefix: str
    period: str

    def __post_init__(self):
        for w in (self.prefix, self.period):
            if not isinstance(w, str) or w.strip("01"):
                raise ValueError(f"not a binary word: {w!r}")
        if not self.period:
            raise ValueError("period must be nonempty")
        prefix, period = self.prefix, _primitive_root(self.period)
        while prefix and prefix[-1] == period[-1]:
            prefix, period = prefix[:-1], period[-1] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def __getitem__(self, q: int) -> int:
        return ep_eval(self, q)

    def bits(self, n: int) -> str:
        return "".join(str(ep_eval(self, q)) for q in range(n))

    def is_finitely_supported(self) -> bool:
        return self.period == "0"

    def support(self) -> list[int]:
        if not self.is_finitely_supported():
            raise ValueError("support is infinite")
        return [i for i, c in enumerate(self.prefix) if c == "1"]

    @classmethod
    def from_support(cls, support) -> "EpPoint":
        support = set(support)
        n = max(support) + 1 if support else 0
        return cls("".join("1" if i in support else "0" for i in range(n)), "0")

    def to_json(self) -> dict:
        return {"prefix": self.prefix, "period": self.period}


ZERO = EpPoint("", "0")
ONES = EpPoint("", "1")


def ep_eval(x: EpPoint, q: int) -> int:
    s = len(x.prefix)
    if q < s:
        return int(x.prefix[q])
    return int(x.period[(q - s) % len(x.period)])


def _pointwise(op: Callable[..., int], xs: Sequence[EpPoint]) -> EpPoint:
    s = max(len(x.prefix) for x in xs)
    k = 1
    for x in xs:
        k = k * len(x.period) // gcd(k, len(x.period))
    bits = ["1" if op(*(ep_eval(x, q) for x in xs)) else "0" for q in range(s + k)]
    return EpPoint("".join(bits[:s]), "".join(bits[s:]))


def ep_xor(x: EpPoint, y: EpPoint) -> EpPoint:
    return _pointwise(lambda a, b: a ^ b, [x, y])


def ep_and(x: EpPoint, y: EpPoint) -> EpPoint:
    return _pointwise(lambda a, b: a & b, [x, y])


def ep_max(xs: Sequence[EpPoint]) -> EpPoint:
    xs = list(xs)
    if not xs:
        raise ValueError("ep_max of an empty list")
    return _pointwise(lambda *bits: max(bits), xs)


def ep_le(x: EpPoint, y: EpPoint) -> bool:
    return ep_and(x, y) == x


def select_vertical(x: EpPoint, n: int, length: int) -> str:
    """First ``length`` bits of the column (x)_n, p -> x(<n, p>)."""
    return "".join(str(ep_eval(x, pair(n, p))) for p in range(length))


def select_phi(x: EpPoint, n: int, length: int) -> str:
    """First ``length`` bits of the section ^n(x), p -> x(phi(n, p))."""
    return "".join(str(ep_eval(x, phi(n, p))) for p in range(length))


def word_section(word: str, n: int) -> str:
    """Longest prefix of ^n(word) determined by a finite word."""
    out = []
    p = 0
    while True:
        q = phi(n, p)
        if q >= len(word):
            return "".join(out)
        out.append(word[q])
        p += 1


# -- membership -------------------------------------------------------------

class Verdict(Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Membership:
    verdict: Verdict
    bound: int | None = None

    @property
    def exact(self) -> bool:
        return self.verdict is not Verdict.UNKNOWN

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "bound": self.bound}


IN = Membership(Verdict.IN)
OUT = Membership(Verdict.OUT)


def unknown(bound: int) -> Membership:
    return Membership(Verdict.UNKNOWN, bound)


def fin_member(x: EpPoint) -> Membership:
    return IN if x.period == "0" else OUT


def _column_is_fin(x: EpPoint, c: int) -> bool:
    # for p >= s the column is periodic in p with period dividing 2K
    s, k = len(x.prefix), len(x.period)
    return not any(ep_eval(x, pair(c, p, None)) for p in range(s, s + 2 * k))


def i3_member(x: EpPoint) -> Membership:
    """Exact: columns repeat with n mod 2K once their entries are periodic."""
    if x.period == "0":
        return IN
    k = len(x.period)
    return IN if all(_column_is_fin(x, n) for n in range(2 * k)) else OUT


def i3_member_scan(x: EpPoint, columns: int = 50, window: int = 10_000) -> Membership:
    """Truncation oracle: a column is deemed infinite if it has a one in
    the second half of a long window."""
    for n in range(columns + 1):
        if any(ep_eval(x, pair(n, p)) for p in range(window // 2, window)):
            return OUT
    return IN


def _inner(path: Sequence[int], a: int) -> int:
    for m in reversed(path):
        a = pair(m, a, None)
    return a


def _section_is_small(x: EpPoint, path: Sequence[int]) -> bool:
    """FIN (equivalently I_3) membership of the iterated section along path.

    ^{m_k}...^{m_1}(x)(<a, b>) = x(<c(a), b>) with c(a) = <m_1, <..., <m_k, a>>>,
    so the section's columns are columns c(a) of x.  c(a) mod 2K only
    depends on a mod 2^(k+1) K.
    """
    if x.period == "0":
        return True
    s, k = len(x.prefix), len(x.period)
    span = s + (2 ** (len(path) + 1)) * k
    return all(_column_is_fin(x, _inner(path, a)) for a in range(span))


@dataclass(frozen=True)
class IdealExpr:
    """FIN, I3, or M/A over a child sequence.

    ``children`` is a finite list whose last element repeats forever;
    ``family`` (n -> IdealExpr) gives an infinite list instead.
    """

    op: str
    children: tuple = ()
    family: Callable[[int], "IdealExpr"] | None = None
    name: str | None = None

    def __post_init__(self):
        if self.op not in ("FIN", "I3", "M", "A"):
            raise ValueError(f"unknown ideal op {self.op!r}")
        object.__setattr__(self, "children", tuple(self.children))
        if self.op in ("M", "A") and not self.children and self.family is None:
            raise ValueError(f"{self.op} needs children")

    def child(self, n: int) -> "IdealExpr":
        if self.family is not None:
            return self.family(n)
        return self.children[min(n, len(self.children) - 1)]

    def to_json(self) -> dict:
        if self.name is not None:
            return {"named": self.name}
        if self.op in ("FIN", "I3"):
            return {"op": self.op}
        return {"op": self.op, "children": [c.to_json() for c in self.children]}

    @classmethod
    def from_json(cls, data) -> "IdealExpr":
        if isinstance(data, str):
            data = json.loads(data)
        if "named" in data:
            return named_ideal(data["named"])
        op = data["op"]
        return cls(op, tuple(cls.from_json(c) for c in data.get("children", ())))


FIN = IdealExpr("FIN", name="FIN")
I3 = IdealExpr("I3", name="I_3")


def ideal_i(k: int) -> IdealExpr:
    """I_k for k >= 3: I_{4+2n} = (I_{3+2n})^a, I_{5+2n} = (I_{4+2n})^m."""
    if k < 3:
        raise ValueError("I_k is defined for k >= 3")
    e = I3
    for j in range(4, k + 1):
        e = IdealExpr("A" if j % 2 == 0 else "M", (e,), name=f"I_{j}")
    return e


I_OMEGA = IdealExpr("A", family=lambda n: ideal_i(3 + 2 * n), name="I_omega")
J_OMEGA = IdealExpr("M", family=lambda n: FIN if n == 0 else ideal_i(2 + 2 * n),
                    name="J_omega")


def ideal_omega_plus(j: int, base: str = "I") -> IdealExpr:
    """I_{omega+j} (base "I") or J_{omega+j} (base "J") for finite j.

    I alternates m, a, m, ... above I_omega; J alternates a, m, ...
    """
    e = I_OMEGA if base == "I" else J_OMEGA
    for i in range(1, j + 1):
        odd = i % 2 == 1
        op = ("M" if odd else "A") if base == "I" else ("A" if odd else "M")
        e = IdealExpr(op, (e,), name=f"{base}_omega+{i}")
    return e


def ideal_limit(xis: Callable[[int], int], base: str = "I") -> IdealExpr:
    """I_lambda / J_lambda for an explicit cofinal sequence xi_n (finite here)."""
    op = "A" if base == "I" else "M"
    return IdealExpr(op, family=lambda n: ideal_omega_plus(2 * xis(n) + 1, base))


def named_ideal(name: str) -> IdealExpr:
    if name in ("FIN", "fin"):
        return FIN
    if name in ("I3", "i3", "I_3"):
        return I3
    if name == "I_omega":
        return I_OMEGA
    if name == "J_omega":
        return J_OMEGA
    for base in ("I", "J"):
        prefix = f"{base}_omega+"
        if name.startswith(prefix):
            return ideal_omega_plus(int(name[len(prefix):]), base)
    if name.startswith("I_") and name[2:].isdigit():
        return ideal_i(int(name[2:]))
    raise ValueError(f"unknown named ideal {name!r}")


def ideal_member(e: IdealExpr, x: EpPoint, bound: int = 32) -> Membership:
    """Three-valued membership; In/Out only with a sound certificate."""
    if e.op == "FIN":
        return fin_member(x)
    if e.op == "I3":
        return i3_member(x)
    # every expression here is a free proper ideal
    if x.period == "0":
        return IN
    if x.period == "1":
        return OUT
    return _member_at(e, x, (), bound)


def _member_at(e: IdealExpr, x: EpPoint, path: tuple, bound: int) -> Membership:
    if e.op in ("FIN", "I3"):
        if not path and e.op == "FIN":
            return fin_member(x)
        if not path:
            return i3_member(x)
        return IN if _section_is_small(x, path) else OUT
    if e.op == "M" and len(path) < 4:
        for n in range(bound + 1):
            if _member_at(e.child(n), x, path + (n,), bound).verdict is Verdict.OUT:
                return OUT
    return unknown(bound)


# -- index transfer and section assembly ------------------------------------

class InjectionError(ValueError):
    pass


def check_column_injection(i: Mapping[int, int]) -> None:
    seen = {}
    for m, im in i.items():
        if unpair(im)[0] != unpair(m)[0]:
            raise InjectionError(f"column changed at m={m}")
        if im in seen:
            raise InjectionError(f"not injective: {seen[im]} and {m}")
        seen[im] = m


def transfer_injection(i: Mapping[int, int], n: int) -> dict[int, int]:
    """I(p) = <(p)_0, (i(phi(n, p)))_1> wherever phi(n, p) is in dom(i)."""
    check_column_injection(i)
    out = {}
    for m, im in i.items():
        k, p = phi_inv(m)
        if k == n:
            out[p] = pair(unpair(p)[0], unpair(im)[1], None)
    return out


def assemble_section_reduction(sections, x: str, out_length: int) -> str:
    """f(x)(q) = f_{((q)_0)_0}(x)(<((q)_0)_1, (q)_1>), first out_length bits.

    ``sections`` is a sequence of word maps or a callable n -> word map.
    """
    get = sections if callable(sections) else sections.__getitem__
    cache: dict[int, str] = {}
    out = []
    for q in range(out_length):
        a, b = unpair(q)
        n, c = unpair(a)
        if n not in cache:
            try:
                cache[n] = get(n)(x)
            except (IndexError, KeyError):
                raise ValueError(f"no section f_{n}") from None
        pos = pair(c, b)
        if pos >= len(cache[n]):
            raise ValueError(f"section f_{n} is too short for position {pos}")
        out.append(cache[n][pos])
    return "".join(out)


@dataclass
class InvarianceReport:
    ok: bool
    rows: list

    def __bool__(self):
        return self.ok


def vertical_invariance_check(ideal: str, i: Mapping[int, int],
                              xs: Sequence[EpPoint]) -> InvarianceReport:
    check_column_injection(i)
    member = {"FIN": fin_member, "I3": i3_member}[ideal.upper()]
    rows = []
    for x in xs:
        sup = x.support()
        missing = [m for m in sup if m not in i]
        if missing:
            raise InjectionError(f"support not covered at {missing[0]}")
        image = EpPoint.from_support(i[m] for m in sup)
        a, b = member(x).verdict, member(image).verdict
        rows.append({"x": x.to_json(), "x_verdict": a.value,
                     "image_verdict": b.value, "agree": a == b})
    return InvarianceReport(all(r["agree"] for r in rows), rows)
