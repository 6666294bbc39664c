"""Exact q-expansions of modular forms on Gamma0(N), 1 <= N <= 10."""

from dataclasses import dataclass
from fractions import Fraction

from . import _qmodular
from ._qmodular import QModularError

__all__ = [
    "QModularError",
    "Series",
    "basis",
    "dimension",
    "expand",
    "identity_names",
    "reduce",
    "verify",
    "weight",
]


def _frac(pair):
    num, den = pair
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class Series:
    """A truncated series sum c_i q^((val + i) / den) + O(q^(prec / den))."""

    den: int
    val_num: int
    prec_num: int
    coefficients: tuple
    text: str

    @classmethod
    def _from_tuple(cls, t):
        den, val, prec, cs, text = t
        return cls(den, val, prec, tuple(_frac(c) for c in cs), text)

    @property
    def valuation(self):
        return Fraction(self.val_num, self.den)

    @property
    def precision(self):
        return Fraction(self.prec_num, self.den)

    def coefficient(self, exponent):
        e = Fraction(exponent)
        if e >= self.precision:
            raise QModularError(f"q^{e} is at or above the precision {self.precision}")
        i = e * self.den - self.val_num
        if i.denominator != 1 or i < 0 or i >= len(self.coefficients):
            return Fraction(0)
        return self.coefficients[int(i)]

    def __str__(self):
        return self.text


def expand(expr, prec):
    return Series._from_tuple(_qmodular.expand(expr, prec))


def weight(expr):
    return _frac(_qmodular.weight(expr))


def dimension(level, weight):
    return _qmodular.dimension(level, weight)


def basis(level, weight, prec):
    return [(label, Series._from_tuple(s)) for label, s in _qmodular.basis(level, weight, prec)]


def reduce(expr, level, weight, prec):
    return [_frac(c) for c in _qmodular.reduce(expr, level, weight, prec)]


def identity_names():
    return list(_qmodular.identity_names())


def verify(name="all", prec=0):
    reports = _qmodular.verify(name, prec)
    for r in reports:
        if r["first_bad_exponent"] is not None:
            r["first_bad_exponent"] = _frac(r["first_bad_exponent"])
    return reports
