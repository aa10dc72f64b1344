"""Sparse multivariate Laurent polynomials over the exact rationals.

A :class:`Poly` stores a map from exponent vectors (sparse tuples of
``(var_id, exponent)`` with nonzero integer exponents, negatives allowed)
to nonzero ``Fraction`` coefficients.  Variables live in a shared
:class:`VarRegistry`; mixing registries is an error.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from numbers import Rational


class PoleError(ZeroDivisionError):
    """Evaluation/substitution hit a zero base under a negative exponent."""


class RegistryMismatch(ValueError):
    pass


class UnboundVariable(KeyError):
    pass


class VarRegistry:
    """Append-only registry of variable names with stable integer ids."""

    def __init__(self):
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        self._lock = threading.Lock()

    def ensure(self, name: str) -> int:
        vid = self._ids.get(name)
        if vid is not None:
            return vid
        with self._lock:
            vid = self._ids.get(name)
            if vid is None:
                vid = len(self._names)
                self._names.append(name)
                self._ids[name] = vid
            return vid

    def name(self, vid: int) -> str:
        return self._names[vid]

    def __contains__(self, name: str) -> bool:
        return name in self._ids


Key = tuple[tuple[int, int], ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class Poly:
    """Immutable sparse Laurent polynomial with Fraction coefficients."""

    __slots__ = ("reg", "terms")

    def __init__(self, reg: VarRegistry, terms: dict[Key, Fraction]):
        self.reg = reg
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, reg: VarRegistry, value) -> "Poly":
        c = _as_fraction(value)
        return cls(reg, {(): c} if c else {})

    @classmethod
    def var(cls, reg: VarRegistry, name: str, exp: int = 1) -> "Poly":
        if exp == 0:
            return cls.const(reg, 1)
        vid = reg.ensure(name)
        return cls(reg, {((vid, exp),): _ONE})

    @classmethod
    def monomial(cls, reg: VarRegistry, exps: dict[str, int], coeff=1) -> "Poly":
        c = _as_fraction(coeff)
        if not c:
            return cls(reg, {})
        key = tuple(
            sorted((reg.ensure(n), e) for n, e in exps.items() if e != 0)
        )
        return cls(reg, {key: c})

    # -- helpers ------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.reg is not self.reg:
                raise RegistryMismatch("polynomials from different registries")
            return other
        return Poly.const(self.reg, other)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        if self.is_constant():
            return self.terms[()]
        raise ValueError("polynomial is not constant")

    def variables(self) -> list[str]:
        vids = {vid for key in self.terms for vid, _ in key}
        return sorted(self.reg.name(v) for v in vids)

    # -- ring arithmetic ----------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, _ZERO) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return Poly(self.reg, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.reg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if len(other.terms) == 1 and () in other.terms:
            c = other.terms[()]
            return Poly(self.reg, {k: v * c for k, v in self.terms.items()})
        terms: dict[Key, Fraction] = {}
        for k1, c1 in self.terms.items():
            d1 = dict(k1)
            for k2, c2 in other.terms.items():
                exps = dict(d1)
                for vid, e in k2:
                    ne = exps.get(vid, 0) + e
                    if ne:
                        exps[vid] = ne
                    else:
                        exps.pop(vid, None)
                key = tuple(sorted(exps.items()))
                s = terms.get(key, _ZERO) + c1 * c2
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return Poly(self.reg, terms)

    __rmul__ = __mul__

    def scale(self, value) -> "Poly":
        c = _as_fraction(value)
        if not c:
            return Poly(self.reg, {})
        return Poly(self.reg, {k: v * c for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            if len(self.terms) != 1:
                raise PoleError("negative power of a non-monomial")
            (key, c), = self.terms.items()
            return Poly(
                self.reg,
                {tuple((vid, e * n) for vid, e in key): c ** n},
            )
        result = Poly.const(self.reg, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.reg is other.reg and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- substitution / evaluation ------------------------------------

    def substitute(self, bindings: dict[str, "Poly | Fraction | int"]) -> "Poly":
        """Simultaneous substitution of variables by polynomials or rationals.

        Substituting a value of 0 into a variable that occurs with a
        negative exponent raises :class:`PoleError`.
        """
        bound: dict[int, Poly] = {}
        for name, val in bindings.items():
            vid = self.reg.ensure(name)
            bound[vid] = self._coerce(val)
        out = Poly(self.reg, {})
        for key, coeff in self.terms.items():
            factor = Poly.const(self.reg, coeff)
            for vid, e in key:
                val = bound.get(vid)
                if val is None:
                    factor = factor * Poly(self.reg, {((vid, e),): _ONE})
                elif e >= 0:
                    factor = factor * val ** e
                else:
                    if val.is_constant():
                        c = val.constant_value()
                        if c == 0:
                            raise PoleError(
                                f"substituting 0 into {self.reg.name(vid)}^{e}"
                            )
                        factor = factor.scale(c ** e)
                    else:
                        factor = factor * val ** e
            out = out + factor
        return out

    def evaluate(self, point: dict[str, "Fraction | int"]) -> Fraction:
        """Exact value at a fully bound rational point."""
        values: dict[int, Fraction] = {}
        for name, val in point.items():
            values[self.reg.ensure(name)] = _as_fraction(val)
        total = _ZERO
        for key, coeff in self.terms.items():
            term = coeff
            for vid, e in key:
                if vid not in values:
                    raise UnboundVariable(self.reg.name(vid))
                v = values[vid]
                if v == 0 and e < 0:
                    raise PoleError(f"0^{e} at variable {self.reg.name(vid)}")
                term *= v ** e
            total += term
        return total

    # -- printing ------------------------------------------------------

    def canonical_string(self) -> str:
        """Deterministic rendering, e.g. ``1 - 1/2*q^-1*v0``.

        Terms are ordered by the exponent vector over the name-sorted
        variables of the polynomial, exponents descending.
        """
        if not self.terms:
            return "0"
        vids = sorted(
            {vid for key in self.terms for vid, _ in key},
            key=lambda v: self.reg.name(v),
        )
        def sort_key(key: Key):
            exps = dict(key)
            return tuple(-exps.get(v, 0) for v in vids)

        pieces = []
        for key in sorted(self.terms, key=sort_key):
            coeff = self.terms[key]
            exps = dict(key)
            mono = "*".join(
                f"{self.reg.name(v)}^{exps[v]}" if exps[v] != 1 else self.reg.name(v)
                for v in vids
                if exps.get(v, 0) != 0
            )
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((coeff < 0, body))
        first_neg, first = pieces[0]
        out = ("-" if first_neg else "") + first
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Poly({self.canonical_string()})"
