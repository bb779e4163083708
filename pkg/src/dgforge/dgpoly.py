"""Commutative graded (Laurent) polynomial dg-rings.

Generators carry integer degrees and may be individually Laurent-inverted.
Multiplication is plain commutative (no Koszul sign rule on the product),
which is legal for dg-rings; the differential still follows the signed
Leibniz rule, so on a monomial x1^a1 ... xg^ag

    d(m) = sum_i (-1)^(deg of the prefix before x_i) * x^(a - e_i)
                 * c(a_i, |x_i|) * d(x_i)

with c(a, even) = a and c(a, odd) = a mod 2 in {0, 1} -- the alternating
prefix signs inside x_i^{a_i} collapse to that coefficient.  The same
closed form covers negative (Laurent) exponents; it is the unique extension
compatible with d(x * x^-1) = 0.

Polynomials are sparse dicts from exponent tuples to nonzero scalars, with
graded-lex ordering used for all deterministic iteration.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import DimMismatch, NotLocalised
from .fields import Field, same_field
from .dgcore import CheckResult, ValidationReport, koszul_sign


def _term_key(exps):
    return (sum(exps), exps)


class SparsePoly:
    """Immutable sparse polynomial over a GradedPolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "GradedPolyRing", terms: Mapping[tuple, object]):
        z = ring.field.zero
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != ring.ngens:
                raise DimMismatch("exponent tuple length != number of generators")
            ring._check_exps(exps)
            if c != z:
                clean[exps] = c
        self.ring = ring
        self.terms = clean

    def _same(self, other: "SparsePoly") -> "GradedPolyRing":
        if self.ring is not other.ring:
            raise DimMismatch("polynomials from different rings")
        return self.ring

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        ring = self._same(other)
        f = ring.field
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = f.add(out.get(exps, f.zero), c)
            if s == f.zero:
                out.pop(exps, None)
            else:
                out[exps] = s
        return SparsePoly(ring, out)

    def __sub__(self, other):
        return self + other.scale(other.ring.field.neg(other.ring.field.one))

    def __neg__(self):
        return self.scale(self.ring.field.neg(self.ring.field.one))

    def scale(self, c):
        f = self.ring.field
        if c == f.zero:
            return self.ring.zero()
        return SparsePoly(self.ring, {e: f.mul(c, x) for e, x in self.terms.items()})

    def __mul__(self, other):
        ring = self._same(other)
        f = ring.field
        out: dict[tuple, object] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = f.add(out.get(e, f.zero), f.mul(ca, cb))
                if s == f.zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return SparsePoly(ring, out)

    def __pow__(self, n: int):
        if n < 0:
            inv = self.monomial_inverse()
            return inv ** (-n)
        result = self.ring.one()
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monomial_inverse(self) -> "SparsePoly":
        """Inverse of a unit monomial; NotLocalised if the needed generators
        are not Laurent-inverted, ValueError if not a monomial."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible here")
        (exps, c), = self.terms.items()
        inv_exps = tuple(-e for e in exps)
        self.ring._check_exps(inv_exps)
        return SparsePoly(self.ring, {inv_exps: self.ring.field.inv(c)})

    def is_unit(self) -> bool:
        if len(self.terms) != 1:
            return False
        (exps, _), = self.terms.items()
        return all(
            e == 0 or self.ring.laurent[i] for i, e in enumerate(exps)
        )

    def d(self) -> "SparsePoly":
        return self.ring.d(self)

    def degree(self):
        """Degree of a homogeneous polynomial; None for 0; ValueError if
        inhomogeneous."""
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous polynomial, degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        try:
            self.degree()
            return True
        except ValueError:
            return False

    def homogeneous_components(self):
        ring = self.ring
        comps: dict[int, dict] = {}
        for exps, c in self.terms.items():
            comps.setdefault(ring.monomial_degree(exps), {})[exps] = c
        return {n: SparsePoly(ring, t) for n, t in sorted(comps.items())}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        one = self.ring.field.one
        for exps, c in self.sorted_terms():
            factors = [
                f"{n}^{e}" if e != 1 else n
                for n, e in zip(self.ring.gen_names, exps)
                if e != 0
            ]
            if not factors:
                bits.append(str(c))
            elif c == one:
                bits.append("*".join(factors))
            else:
                bits.append(f"{c}*" + "*".join(factors))
        return " + ".join(bits)


class GradedPolyRing:
    """Commutative graded polynomial ring with optional Laurent generators
    and a differential specified on generators."""

    def __init__(
        self,
        field: Field,
        gens: Sequence[tuple],     # (name, degree, laurent_flag)
        d_gens: Mapping[str, "SparsePoly | dict"] | None = None,
    ):
        self.field = field
        self.gen_names = tuple(g[0] for g in gens)
        self.gen_degrees = tuple(int(g[1]) for g in gens)
        self.laurent = tuple(bool(g[2]) for g in gens)
        self.ngens = len(self.gen_names)
        if len(set(self.gen_names)) != self.ngens:
            raise ValueError("duplicate generator names")
        self._d_gens: list[SparsePoly] = [self.zero()] * self.ngens
        for name, val in (d_gens or {}).items():
            i = self.gen_names.index(name)
            if isinstance(val, SparsePoly):
                val = SparsePoly(self, dict(val.terms))
            else:
                val = SparsePoly(self, {tuple(e): field.parse(c) for e, c in val.items()})
            self._d_gens[i] = val
        self._validation: ValidationReport | None = None

    def _check_exps(self, exps):
        for i, e in enumerate(exps):
            if e < 0 and not self.laurent[i]:
                raise NotLocalised(
                    f"negative power of non-Laurent generator {self.gen_names[i]}"
                )

    # ------------------------------------------------------------ builders

    def zero(self) -> SparsePoly:
        return SparsePoly(self, {})

    def one(self) -> SparsePoly:
        return SparsePoly(self, {(0,) * self.ngens: self.field.one})

    def monomial(self, exps: Iterable[int], coeff=None) -> SparsePoly:
        c = self.field.one if coeff is None else coeff
        return SparsePoly(self, {tuple(exps): c})

    def gen(self, name: str) -> SparsePoly:
        i = self.gen_names.index(name)
        exps = [0] * self.ngens
        exps[i] = 1
        return self.monomial(exps)

    def constant(self, c) -> SparsePoly:
        return SparsePoly(self, {(0,) * self.ngens: self.field.parse(c)})

    def d_gen(self, name: str) -> SparsePoly:
        return self._d_gens[self.gen_names.index(name)]

    def monomial_degree(self, exps) -> int:
        return sum(e * d for e, d in zip(exps, self.gen_degrees))

    # ------------------------------------------------------------ derivative

    def _power_coeff(self, a: int, gen_degree: int):
        """c(a, |x|): collapsed alternating-sign coefficient of x^(a-1) d(x)
        in d(x^a)."""
        if gen_degree % 2 == 0:
            return self.field.from_int(a)
        return self.field.from_int(a % 2)

    def d(self, p: SparsePoly) -> SparsePoly:
        if p.ring is not self:
            raise DimMismatch("polynomial from another ring")
        f = self.field
        out = self.zero()
        for exps, c in p.terms.items():
            prefix_deg = 0
            for i in range(self.ngens):
                a = exps[i]
                if a != 0 and not self._d_gens[i].is_zero():
                    pc = self._power_coeff(a, self.gen_degrees[i])
                    if pc != f.zero:
                        rest = list(exps)
                        rest[i] = a - 1
                        sign = koszul_sign(f, prefix_deg)
                        coeff = f.mul(c, f.mul(sign, pc))
                        term = SparsePoly(self, {tuple(rest): coeff})
                        out = out + term * self._d_gens[i]
                prefix_deg += exps[i] * self.gen_degrees[i]
        return out

    # ------------------------------------------------------------ validation

    def validate(self) -> ValidationReport:
        if self._validation is not None:
            return self._validation
        checks = []
        bad_deg = None
        for i, name in enumerate(self.gen_names):
            dg = self._d_gens[i]
            if dg.is_zero():
                continue
            try:
                got = dg.degree()
            except ValueError:
                bad_deg = (name, "inhomogeneous")
                break
            if got != self.gen_degrees[i] + 1:
                bad_deg = (name, got)
                break
        checks.append(CheckResult("diff_degree", bad_deg is None, bad_deg))
        # commutativity-compatibility of the signed Leibniz rule: for
        # generators x, y the two expansions of d(xy) = d(yx) must agree
        bad_pair = None
        for i in range(self.ngens):
            for j in range(i + 1, self.ngens):
                xi, xj = self.gen(self.gen_names[i]), self.gen(self.gen_names[j])
                si = koszul_sign(self.field, self.gen_degrees[i])
                sj = koszul_sign(self.field, self.gen_degrees[j])
                lhs = self._d_gens[i] * xj + (xi * self._d_gens[j]).scale(si)
                rhs = self._d_gens[j] * xi + (xj * self._d_gens[i]).scale(sj)
                if lhs != rhs:
                    bad_pair = (self.gen_names[i], self.gen_names[j])
                    break
            if bad_pair:
                break
        checks.append(CheckResult("leibniz_commutativity", bad_pair is None, bad_pair))
        bad_sq = None
        for i, name in enumerate(self.gen_names):
            dd = self.d(self._d_gens[i])
            if not dd.is_zero():
                bad_sq = name
                break
        checks.append(CheckResult("d_squared", bad_sq is None, bad_sq))
        report = ValidationReport(checks)
        self._validation = report
        return report

    def ensure_valid(self):
        report = self.validate()
        if not report.ok:
            raise ValueError(f"invalid dg-ring: {report.failures()}")

    # ------------------------------------------------------------ regularity

    def is_regular_homogeneous(self, p: SparsePoly) -> bool:
        """Regular homogeneous element test.  The ring is an integral
        domain, so this is just nonzero + homogeneous."""
        return (not p.is_zero()) and p.is_homogeneous()

    # ------------------------------------------------------------ extension

    def laurent_extension(self, invert_names: Iterable[str]) -> "GradedPolyRing":
        invert = set(invert_names)
        unknown = invert - set(self.gen_names)
        if unknown:
            raise ValueError(f"unknown generators: {sorted(unknown)}")
        gens = [
            (n, d, l or (n in invert))
            for n, d, l in zip(self.gen_names, self.gen_degrees, self.laurent)
        ]
        ext = GradedPolyRing(self.field, gens)
        for i, name in enumerate(self.gen_names):
            ext._d_gens[i] = SparsePoly(ext, dict(self._d_gens[i].terms))
        ext._validation = None
        return ext

    def cast(self, p: SparsePoly) -> SparsePoly:
        """Reinterpret a polynomial from a ring with the same generators
        (e.g. before Laurent extension) in this ring."""
        if p.ring.gen_names != self.gen_names:
            raise DimMismatch("generator mismatch")
        return SparsePoly(self, dict(p.terms))

    def monomials_of_degree(self, n: int, exp_bound: int):
        """All exponent tuples of homogeneous degree n with |exponent| <=
        exp_bound per generator (negative side only for Laurent gens).
        Raises ValueError for degree-0 generators (infinite components)."""
        if any(d == 0 for d in self.gen_degrees):
            raise ValueError("degree-0 generator: graded components not finite")
        out = []

        def rec(i, acc, remaining):
            if i == self.ngens:
                if remaining == 0:
                    out.append(tuple(acc))
                return
            lo = -exp_bound if self.laurent[i] else 0
            for e in range(lo, exp_bound + 1):
                rec(i + 1, acc + [e], remaining - e * self.gen_degrees[i])

        rec(0, [], n)
        return sorted(out, key=_term_key)

    def __repr__(self):
        gens = ", ".join(
            f"{n}{'^±1' if l else ''}(deg {d})"
            for n, d, l in zip(self.gen_names, self.gen_degrees, self.laurent)
        )
        return f"GradedPolyRing({self.field!r}; {gens})"


def poly_ring_kx(field, name="X", degree=-1, laurent=False) -> GradedPolyRing:
    """K[X] with |X| = degree (default -1) and d(X) = 1: the motivating
    single-generator dg-ring (d(X^{2n}) = 0, d(X^{2n+1}) = X^{2n})."""
    ring = GradedPolyRing(field, [(name, degree, laurent)], None)
    ring._d_gens[0] = ring.one()
    ring._validation = None
    ring.ensure_valid()
    return ring
