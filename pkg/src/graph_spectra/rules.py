"""Closed-form vertex rules of the form ``sum_k a_k * n**p_k``.

These cover the path-graph family (``m(n) = n^-4``, ``b(n, n+1) = n^2``)
and the small potential grammar accepted on the command line.  Exponents may
be negative or fractional; ``n`` always starts at 1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta


class RuleSyntaxError(ValueError):
    """Raised when a rule string cannot be parsed; carries the offending column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class PowerRule:
    """A finite sum of monomials, stored as ``((coef, exponent), ...)``."""

    terms: tuple[tuple[float, float], ...] = ()

    @classmethod
    def monomial(cls, coef: float, exponent: float) -> "PowerRule":
        return cls(((float(coef), float(exponent)),))

    @classmethod
    def constant(cls, value: float) -> "PowerRule":
        return cls(((float(value), 0.0),)) if value != 0 else cls()

    def __call__(self, n):
        n = np.asarray(n, dtype=float)
        out = np.zeros_like(n)
        for coef, p in self.terms:
            out = out + coef * n**p
        return out

    def evaluate(self, N: int) -> np.ndarray:
        """Values at ``n = 1..N``."""
        return self(np.arange(1, N + 1, dtype=float))

    def simplified(self) -> "PowerRule":
        acc: dict[float, float] = {}
        for coef, p in self.terms:
            acc[p] = acc.get(p, 0.0) + coef
        return PowerRule(tuple((c, p) for p, c in sorted(acc.items()) if c != 0.0))

    def divided_by_monomial(self, coef: float, exponent: float) -> "PowerRule":
        return PowerRule(tuple((c / coef, p - exponent) for c, p in self.terms)).simplified()

    @property
    def is_zero(self) -> bool:
        return not self.simplified().terms

    def series_converges(self) -> bool:
        """Whether ``sum_{n>=1}`` of the rule is finite."""
        return all(p < -1 for _, p in self.simplified().terms)

    def series_total(self) -> float:
        """Closed-form value of the full series; only valid when it converges."""
        if not self.series_converges():
            raise ValueError("series diverges")
        return math.fsum(c * float(zeta(-p, 1)) for c, p in self.simplified().terms)

    def series_tail(self, N: int) -> float:
        """``sum_{n>N}`` via the Hurwitz zeta function."""
        if not self.series_converges():
            raise ValueError("series diverges")
        return math.fsum(c * float(zeta(-p, N + 1)) for c, p in self.simplified().terms)

    def tail_bounds(self, N: int) -> tuple[float, float]:
        """Integral-comparison bracket for the tail of a nonnegative single-sign rule.

        For a decreasing ``n**p`` with ``p < -1``:
        ``int_{N+1}^inf <= sum_{n>N} <= int_N^inf``.
        """
        if not self.series_converges():
            raise ValueError("series diverges")
        lo = hi = 0.0
        for c, p in self.simplified().terms:
            a = c * (N + 1) ** (p + 1) / -(p + 1)
            b = c * N ** (p + 1) / -(p + 1)
            lo += min(a, b)
            hi += max(a, b)
        return lo, hi

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, p in self.terms:
            if p == 0:
                parts.append(repr(c))
            else:
                parts.append(f"{c!r}*n^{p!r}")
        return " + ".join(parts)


_NUMBER = r"[0-9]+(?:\.[0-9]*)?(?:[eE][-+]?[0-9]+)?|\.[0-9]+(?:[eE][-+]?[0-9]+)?"
_TOKEN = re.compile(rf"\s*(?:(?P<num>{_NUMBER})|(?P<n>n)|(?P<op>[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise RuleSyntaxError("unexpected character", text, col)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


def parse_rule(text: str) -> PowerRule:
    """Parse ``const``, ``n^k``, ``a*n^k``, and sums/differences of those.

    Exponents may carry a sign, optionally parenthesised: ``n^-6`` or ``n^(-6)``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise RuleSyntaxError("empty rule", text, 0)
    terms: list[tuple[float, float]] = []
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else ("end", "", len(text))

    def number_with_sign() -> float:
        nonlocal i
        sign = 1.0
        kind, val, pos = peek()
        paren = False
        if kind == "op" and val == "(":
            paren = True
            i += 1
            kind, val, pos = peek()
        if kind == "op" and val in "+-":
            sign = -1.0 if val == "-" else 1.0
            i += 1
            kind, val, pos = peek()
        if kind != "num":
            raise RuleSyntaxError("expected number", text, pos)
        i += 1
        if paren:
            k2, v2, p2 = peek()
            if (k2, v2) != ("op", ")"):
                raise RuleSyntaxError("expected ')'", text, p2)
            i += 1
        return sign * float(val)

    sign = 1.0
    kind, val, pos = peek()
    if kind == "op" and val in "+-":
        sign = -1.0 if val == "-" else 1.0
        i += 1
    while True:
        kind, val, pos = peek()
        coef, exponent = 1.0, 0.0
        if kind == "num":
            coef = float(val)
            i += 1
            k2, v2, _ = peek()
            if (k2, v2) == ("op", "*"):
                i += 1
                k3, _, p3 = peek()
                if k3 != "n":
                    raise RuleSyntaxError("expected 'n'", text, p3)
                kind = "n"
            else:
                kind = "const"
        if kind == "n":
            i += 1
            exponent = 1.0
            k2, v2, _ = peek()
            if (k2, v2) == ("op", "^"):
                i += 1
                exponent = number_with_sign()
        elif kind != "const":
            raise RuleSyntaxError("expected term", text, pos)
        terms.append((sign * coef, exponent))
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1.0 if val == "-" else 1.0
            i += 1
            continue
        raise RuleSyntaxError("expected '+' or '-'", text, pos)
    return PowerRule(tuple(terms)).simplified()
