"""Integer-coefficient Laurent polynomials with a canonical text form.

Terms are kept in a dict mapping exponent vectors (tuples of ints, possibly
negative) to nonzero integer coefficients.  The canonical ordering is graded
lexicographic, highest first: terms are compared by total degree and then
lexicographically on the exponent vector.  The text form produced by
``text()`` is the equality witness used throughout the test suite, so its
format is deliberately rigid.

Exact division is the workhorse for exchange relations: ``exact_div`` shifts
numerator and denominator into honest polynomials, runs single-divisor
division over the rationals, and demands a zero remainder and an integral
quotient.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence


class NonExactDivision(ArithmeticError):
    """Raised when a Laurent division leaves a remainder or a non-integer
    quotient.  The offending remainder (a LaurentPoly, zero when the quotient
    exists but is not integral) is attached as ``remainder``."""

    def __init__(self, message: str, remainder: "LaurentPoly | None" = None):
        super().__init__(message)
        self.remainder = remainder


def _grlex_key(exponents: tuple[int, ...]) -> tuple:
    return (sum(exponents), exponents)


class LaurentPoly:
    """A Laurent polynomial over a fixed, ordered tuple of variable names.

    >>> x, y = LaurentPoly.ring(("x", "y"))
    >>> print((x + 1) * (x - 1))
    x^2 - 1
    >>> print(x + (y + 1))
    x + y + 1
    >>> print((x * x - 1).exact_div(x - 1))
    x + 1
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], int]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables!r}")
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError(
                    f"exponent vector {exps!r} does not match {len(variables)} variables"
                )
            if isinstance(coeff, Fraction):
                if coeff.denominator != 1:
                    raise ValueError(f"non-integer coefficient {coeff}")
                coeff = coeff.numerator
            if not isinstance(coeff, int):
                raise TypeError(f"coefficient {coeff!r} is not an integer")
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(variables: Sequence[str]) -> "LaurentPoly":
        return LaurentPoly(variables, {})

    @staticmethod
    def constant(variables: Sequence[str], value: int) -> "LaurentPoly":
        n = len(tuple(variables))
        return LaurentPoly(variables, {(0,) * n: value})

    @staticmethod
    def one(variables: Sequence[str]) -> "LaurentPoly":
        return LaurentPoly.constant(variables, 1)

    @staticmethod
    def variable(variables: Sequence[str], name: str) -> "LaurentPoly":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return LaurentPoly(variables, {exps: 1})

    @staticmethod
    def monomial(variables: Sequence[str], coeff: int, exponents: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(variables, {tuple(exponents): coeff})

    @staticmethod
    def ring(variables: Sequence[str]) -> tuple["LaurentPoly", ...]:
        """Generators of the Laurent ring, in variable order."""
        variables = tuple(variables)
        return tuple(LaurentPoly.variable(variables, v) for v in variables)

    # -- inspection --------------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> int:
        if not self._terms:
            return 0
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self._terms.values()))

    def min_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum exponent over all terms (zero poly -> zeros)."""
        n = len(self.variables)
        if not self._terms:
            return (0,) * n
        return tuple(min(e[i] for e in self._terms) for i in range(n))

    def coefficients(self) -> list[int]:
        return [c for _, c in self.terms()]

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return LaurentPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if not isinstance(power, int):
            raise TypeError(f"exponent must be an int, got {power!r}")
        if power < 0:
            if len(self._terms) == 1:
                (exps, coeff), = self._terms.items()
                if abs(coeff) == 1:
                    sign = 1 if coeff == 1 or power % 2 == 0 else -1
                    return LaurentPoly(
                        self.variables, {tuple(e * power for e in exps): sign}
                    )
            raise ValueError(f"negative power {power} of non-unit {self}")
        result = LaurentPoly.one(self.variables)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def shift(self, exponents: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent vector."""
        exponents = tuple(exponents)
        return LaurentPoly(
            self.variables,
            {tuple(a + b for a, b in zip(e, exponents)): c for e, c in self._terms.items()},
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.variables, tuple(sorted(self._terms.items()))))
            object.__setattr__(self, "_hash", h)
        return h

    # -- division ----------------------------------------------------------

    def exact_div(self, divisor: "LaurentPoly | int") -> "LaurentPoly":
        """Exact Laurent division.

        Both operands are shifted by their componentwise minimum exponents to
        honest polynomials, then divided with graded-lex leading terms.  A
        nonzero remainder or a quotient with fractional coefficients raises
        NonExactDivision.
        """
        divisor = self._coerce(divisor)
        if divisor is NotImplemented:
            raise TypeError("divisor must be a LaurentPoly or int")
        if divisor.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return self

        num_shift = self.min_exponents()
        den_shift = divisor.min_exponents()
        back = tuple(a - b for a, b in zip(num_shift, den_shift))
        work: dict[tuple[int, ...], Fraction] = {
            tuple(a - b for a, b in zip(e, num_shift)): Fraction(c)
            for e, c in self._terms.items()
        }
        den: dict[tuple[int, ...], int] = {
            tuple(a - b for a, b in zip(e, den_shift)): c
            for e, c in divisor._terms.items()
        }
        lead_den = max(den, key=_grlex_key)
        lead_den_coeff = den[lead_den]

        quotient: dict[tuple[int, ...], Fraction] = {}
        remainder: dict[tuple[int, ...], Fraction] = {}
        while work:
            lead = max(work, key=_grlex_key)
            coeff = work.pop(lead)
            step = tuple(a - b for a, b in zip(lead, lead_den))
            if any(e < 0 for e in step):
                remainder[lead] = coeff
                continue
            factor = coeff / lead_den_coeff
            quotient[step] = quotient.get(step, Fraction(0)) + factor
            for e, c in den.items():
                if e == lead_den:
                    continue
                target = tuple(a + b for a, b in zip(step, e))
                val = work.get(target, Fraction(0)) - factor * c
                if val:
                    work[target] = val
                else:
                    work.pop(target, None)

        if remainder:
            scale = 1
            for c in remainder.values():
                scale = scale * c.denominator // gcd(scale, c.denominator)
            rem = LaurentPoly(
                self.variables,
                {
                    tuple(a + b for a, b in zip(e, back)): int(c * scale)
                    for e, c in remainder.items()
                },
            )
            note = "" if scale == 1 else f" (remainder scaled by {scale})"
            raise NonExactDivision(
                f"({self}) is not divisible by ({divisor}){note}", remainder=rem
            )
        if any(c.denominator != 1 for c in quotient.values()):
            raise NonExactDivision(
                f"quotient of ({self}) by ({divisor}) has fractional coefficients",
                remainder=LaurentPoly.zero(self.variables),
            )
        return LaurentPoly(
            self.variables,
            {tuple(a + b for a, b in zip(e, back)): c.numerator for e, c in quotient.items()},
        )

    # -- substitution ------------------------------------------------------

    def separate(self) -> tuple["LaurentPoly", tuple[int, ...]]:
        """Write self as N / monomial: returns (N, d) with N an honest
        polynomial and self == N * prod(v_i^-d_i), all d_i >= 0."""
        shift = self.min_exponents()
        d = tuple(-min(e, 0) for e in shift)
        return self.shift(d), d

    def substitute(self, values: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Substitute polynomials for variables.

        Every variable of self must be mapped; exponents of self must be
        nonnegative (use separate() first for genuine Laurent input).  The
        values must share one common variable tuple, which becomes the
        variable tuple of the result.
        """
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise ValueError(f"no substitution given for {missing}")
        targets = {values[v].variables for v in self.variables}
        if len(targets) != 1:
            raise ValueError("substitution values live in different rings")
        target_vars = next(iter(targets))
        result = LaurentPoly.zero(target_vars)
        power_cache: dict[tuple[str, int], LaurentPoly] = {}
        for exps, coeff in self._terms.items():
            term = LaurentPoly.constant(target_vars, coeff)
            for var, e in zip(self.variables, exps):
                if e == 0:
                    continue
                if e < 0:
                    raise ValueError(
                        f"negative exponent {e} of {var}; separate() the input first"
                    )
                key = (var, e)
                if key not in power_cache:
                    power_cache[key] = values[var] ** e
                term = term * power_cache[key]
            result = result + term
        return result

    def substitute_laurent(self, values: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Substitute into a genuine Laurent polynomial: splits off the
        monomial denominator, substitutes into the numerator, and divides
        exactly by the substituted denominator."""
        numerator, dens = self.separate()
        image = numerator.substitute(values)
        for var, e in zip(self.variables, dens):
            if e:
                image = image.exact_div(values[var] ** e)
        return image

    def derivative(self, name: str) -> "LaurentPoly":
        """Formal partial derivative with respect to one variable."""
        if name not in self.variables:
            raise ValueError(f"unknown variable {name!r}")
        idx = self.variables.index(name)
        terms: dict[tuple[int, ...], int] = {}
        for exps, coeff in self._terms.items():
            e = exps[idx]
            if e == 0:
                continue
            new = list(exps)
            new[idx] = e - 1
            key = tuple(new)
            terms[key] = terms.get(key, 0) + coeff * e
        return LaurentPoly(self.variables, terms)

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a rational point (all variables must be assigned and
        nonzero wherever a negative exponent occurs)."""
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            value = Fraction(coeff)
            for var, e in zip(self.variables, exps):
                if e:
                    value *= Fraction(point[var]) ** e
            total += value
        return total

    # -- rendering ---------------------------------------------------------

    def text(self) -> str:
        """Canonical text form: terms in descending graded-lex order, joined
        by " + " / " - ", with unit coefficients and zero exponents omitted.

        >>> x, y = LaurentPoly.ring(("x", "y"))
        >>> (2 * x * y ** 0 - y + 1).text()
        '2*x - y + 1'
        >>> (x.shift((-2, 0))).text()
        'x^-1'
        """
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for exps, coeff in self.terms():
            factors = []
            for var, e in zip(self.variables, exps):
                if e == 0:
                    continue
                factors.append(var if e == 1 else f"{var}^{e}")
            magnitude = abs(coeff)
            if magnitude != 1 or not factors:
                factors.insert(0, str(magnitude))
            body = "*".join(factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"{' + ' if coeff > 0 else ' - '}{body}")
        return "".join(pieces)

    def fraction_text(self) -> str:
        """Display form numerator/denominator with a monomial denominator.

        Single-character variable names are juxtaposed, matching the
        familiar handwritten form:

        >>> x, y = LaurentPoly.ring(("x", "y"))
        >>> (x + y + 1).exact_div(x * y).fraction_text()
        '(x+y+1)/(xy)'
        >>> ((y + 1).exact_div(x)).fraction_text()
        '(y+1)/x'
        """
        numerator, dens = self.separate()
        compact = all(len(v) == 1 for v in self.variables)
        sep = "" if compact else "*"

        def term_text(exps: tuple[int, ...], coeff: int, lead: bool) -> str:
            factors = []
            for var, e in zip(self.variables, exps):
                if e == 0:
                    continue
                factors.append(var if e == 1 else f"{var}^{e}")
            magnitude = abs(coeff)
            if magnitude != 1 or not factors:
                factors.insert(0, str(magnitude))
            body = sep.join(factors)
            if lead:
                return body if coeff > 0 else f"-{body}"
            return f"{'+' if coeff > 0 else '-'}{body}"

        parts = [term_text(e, c, i == 0) for i, (e, c) in enumerate(numerator.terms())]
        num_text = "".join(parts) if parts else "0"
        if not any(dens):
            return num_text
        den_factors = [
            var if e == 1 else f"{var}^{e}" for var, e in zip(self.variables, dens) if e
        ]
        den_text = sep.join(den_factors)
        if len(numerator) > 1:
            num_text = f"({num_text})"
        if len(den_factors) > 1:
            den_text = f"({den_text})"
        return f"{num_text}/{den_text}"

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.text()!r})"


def parse_laurent(variables: Sequence[str], source: str) -> LaurentPoly:
    """Parse a restricted Laurent expression: signed sums of terms, each term
    a '*'-separated product of integer constants and var^int factors.

    >>> print(parse_laurent(("x", "y"), "2*x*y^-1 - 3"))
    2*x*y^-1 - 3
    """
    variables = tuple(variables)
    text = source.replace(" ", "")
    if not text:
        raise ValueError("empty expression")
    # split into signed terms
    terms: list[tuple[int, str]] = []
    sign, start = 1, 0
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        start = 1
    i = start
    current = []
    while i < len(text):
        ch = text[i]
        if ch in "+-" and i > 0 and text[i - 1] != "^":
            terms.append((sign, "".join(current)))
            sign = -1 if ch == "-" else 1
            current = []
        else:
            current.append(ch)
        i += 1
    terms.append((sign, "".join(current)))

    result = LaurentPoly.zero(variables)
    for sgn, body in terms:
        if not body:
            raise ValueError(f"empty term in {source!r}")
        coeff = sgn
        exps = [0] * len(variables)
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {source!r}")
            name, _, power = factor.partition("^")
            if name.lstrip("-").isdigit():
                if power:
                    coeff *= int(name) ** int(power)
                else:
                    coeff *= int(name)
            elif name in variables:
                exps[variables.index(name)] += int(power) if power else 1
            else:
                raise ValueError(f"unknown factor {factor!r} in {source!r}")
        result = result + LaurentPoly.monomial(variables, coeff, exps)
    return result


def product(polys: Iterable[LaurentPoly], unit: LaurentPoly) -> LaurentPoly:
    """Product of an iterable of Laurent polynomials (unit for empty input)."""
    result = unit
    for p in polys:
        result = result * p
    return result
