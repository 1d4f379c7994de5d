"""Sparse homogeneous forms in the dual variables y1..yr and the action of
operator monomials on them by partial differentiation or by contraction.

Monomials are bare exponent tuples. Within a fixed degree they are ordered
graded reverse-lexicographically with y1 > y2 > ..., so index 0 is always
y1^d; the (monomial -> column index) maps are cached per (num_vars, degree).
"""

from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, perm

from .fields import FieldSpec, Scalar
from .linalg import Matrix, Subspace, row_space

Exponents = tuple[int, ...]


class DerivativeAction(Enum):
    DIFFERENTIATE = "differentiate"
    CONTRACT = "contract"


class FormParseError(ValueError):
    """Syntax or semantic error in a form expression, with a position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ParameterMismatchError(ValueError):
    """Forms with incompatible (num_vars, degree, field) were combined."""


def space_dim(num_vars: int, degree: int) -> int:
    """Dimension of the space of degree-`degree` forms in `num_vars` variables."""
    if degree < 0:
        return 0
    return comb(degree + num_vars - 1, num_vars - 1)


@lru_cache(maxsize=None)
def monomials_of_degree(num_vars: int, degree: int) -> tuple[Exponents, ...]:
    """All exponent vectors of the given total degree, in monomial order."""
    if num_vars < 1 or degree < 0:
        return ()
    vecs: list[Exponents] = []

    def emit(prefix: tuple[int, ...], rem: int, slots: int) -> None:
        if slots == 1:
            vecs.append(prefix + (rem,))
            return
        for k in range(rem, -1, -1):
            emit(prefix + (k,), rem - k, slots - 1)

    emit((), degree, num_vars)
    # grevlex descending == ascending lexicographic on reversed exponents
    vecs.sort(key=lambda m: tuple(reversed(m)))
    return tuple(vecs)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict[Exponents, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(num_vars, degree))}


def _divisors_of_degree(exps: Exponents, degree: int) -> list[Exponents]:
    """All exponent vectors a <= exps componentwise with total degree `degree`."""
    n = len(exps)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + exps[i]
    out: list[Exponents] = []
    acc: list[int] = []

    def rec(idx: int, rem: int) -> None:
        if rem > suffix[idx]:
            return
        if idx == n:
            out.append(tuple(acc))
            return
        for k in range(min(exps[idx], rem), -1, -1):
            acc.append(k)
            rec(idx + 1, rem - k)
            acc.pop()

    rec(0, degree)
    return out


class Form:
    """Homogeneous polynomial with exact coefficients, stored sparsely.

    `terms` maps exponent tuples to nonzero field scalars. A Form with no
    terms is the zero form of its declared degree; those arise from
    operator actions but are rejected as module generators.
    """

    __slots__ = ("num_vars", "degree", "field", "terms", "_hash")

    def __init__(
        self,
        num_vars: int,
        degree: int,
        field: FieldSpec,
        terms: dict[Exponents, int | Fraction],
    ):
        if num_vars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        reduced: dict[Exponents, Scalar] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != num_vars:
                raise ValueError(f"exponent tuple {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if sum(exps) != degree:
                raise ValueError(
                    f"monomial {exps} has degree {sum(exps)}, form declares {degree}"
                )
            c = field.reduce(coeff)
            if c != field.zero():
                reduced[exps] = c
        self.num_vars = num_vars
        self.degree = degree
        self.field = field
        self.terms = reduced
        self._hash = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.degree == other.degree
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    self.num_vars,
                    self.degree,
                    self.field,
                    frozenset(self.terms.items()),
                )
            )
        return self._hash

    def __repr__(self) -> str:
        return f"Form({self.to_text()!r}, vars={self.num_vars}, degree={self.degree})"

    def coefficient_vector(self) -> list[Scalar]:
        """Dense coefficients in the monomial order of this degree."""
        idx = monomial_index(self.num_vars, self.degree)
        zero = self.field.zero()
        vec = [zero] * len(idx)
        for exps, coeff in self.terms.items():
            vec[idx[exps]] = coeff
        return vec

    def to_text(self) -> str:
        """Expression in the module-file grammar (integer coefficients)."""
        if self.is_zero:
            return "0"
        coeffs = dict(self.terms)
        if not self.field.is_modular:
            den = 1
            for c in coeffs.values():
                d = c.denominator
                den = den * d // gcd(den, d)
            coeffs = {m: c * den for m, c in coeffs.items()}
        order = monomial_index(self.num_vars, self.degree)
        pieces: list[str] = []
        for exps in sorted(coeffs, key=order.get):
            c = int(coeffs[exps])
            mono = "*".join(
                f"y{i + 1}^{e}" if e > 1 else f"y{i + 1}"
                for i, e in enumerate(exps)
                if e
            )
            mag = abs(c)
            body = mono if mag == 1 else f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)


_TOKEN = re.compile(r"(?P<int>\d+)|(?P<var>y)|(?P<sym>[\^*+-])|(?P<bad>\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind == "bad":
            raise FormParseError(f"unexpected character {m.group()!r}", m.start())
        tokens.append((kind, m.group(), m.start()))
    return tokens


def parse_form(text: str, num_vars: int, degree: int, field: FieldSpec) -> Form:
    """Parse an expression like ``y1^2*y2 + 3*y2^3 - y1*y2*y3``.

    Grammar: expression := ['-'] term (('+'|'-') term)*;
    term := [integer '*']? factor ('*' factor)*;
    factor := 'y' index ['^' exponent]. Indices are 1-based, whitespace is
    insignificant. Every term must have total degree `degree`; a form whose
    terms all cancel is rejected.
    """
    tokens = _tokenize(text)
    pos = 0
    end = len(text)

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, "", end)

    def take(kind: str, what: str):
        nonlocal pos
        tk, val, at = peek()
        if tk != kind:
            raise FormParseError(f"expected {what}", at)
        pos += 1
        return val, at

    def parse_factor() -> tuple[int, int, int]:
        nonlocal pos
        _, at = take("var", "a variable like y1")
        val, iat = take("int", "a variable index")
        index = int(val)
        if not 1 <= index <= num_vars:
            raise FormParseError(
                f"variable index {index} out of range 1..{num_vars}", iat
            )
        exp = 1
        tk, val, _ = peek()
        if tk == "sym" and val == "^":
            pos += 1
            ev, _ = take("int", "an exponent")
            exp = int(ev)
        return index, exp, at

    def parse_term() -> tuple[Exponents, int, int]:
        nonlocal pos
        coeff = 1
        tk, val, at = peek()
        term_at = at
        if tk == "int":
            coeff = int(val)
            pos += 1
            take("sym", "'*' after a coefficient")
        exps = [0] * num_vars
        index, exp, _ = parse_factor()
        exps[index - 1] += exp
        while True:
            tk, val, _ = peek()
            if tk == "sym" and val == "*":
                pos += 1
                index, exp, _ = parse_factor()
                exps[index - 1] += exp
            else:
                break
        tdeg = sum(exps)
        if tdeg != degree:
            raise FormParseError(
                f"term has degree {tdeg}, expected {degree}", term_at
            )
        return tuple(exps), coeff, term_at

    if not tokens:
        raise FormParseError("empty expression", 0)

    acc: dict[Exponents, Scalar] = {}
    sign = 1
    tk, val, _ = peek()
    if tk == "sym" and val == "-":
        sign = -1
        pos += 1
    while True:
        exps, coeff, _ = parse_term()
        cur = acc.get(exps, field.zero())
        acc[exps] = field.add(cur, field.reduce(sign * coeff))
        tk, val, at = peek()
        if tk is None:
            break
        if tk == "sym" and val in "+-":
            sign = 1 if val == "+" else -1
            pos += 1
        else:
            raise FormParseError("expected '+' or '-' between terms", at)

    acc = {m: c for m, c in acc.items() if c != field.zero()}
    if not acc:
        raise FormParseError("form is zero after combining terms", 0)
    return Form(num_vars, degree, field, acc)


def apply_operator(
    op: Exponents, form: Form, action: DerivativeAction = DerivativeAction.CONTRACT
) -> Form:
    """Act on `form` by the operator monomial x^op.

    Differentiation multiplies by falling factorials; contraction just
    lowers exponents with coefficient 1. Either way a term not divisible
    by the operator dies. The result is a Form of degree deg - |op|,
    possibly zero.
    """
    i = sum(op)
    if len(op) != form.num_vars:
        raise ParameterMismatchError(
            f"operator has {len(op)} variables, form has {form.num_vars}"
        )
    if i > form.degree:
        raise ValueError(f"operator degree {i} exceeds form degree {form.degree}")
    field = form.field
    out: dict[Exponents, Scalar] = {}
    for exps, coeff in form.terms.items():
        if all(b >= a for b, a in zip(exps, op)):
            target = tuple(b - a for b, a in zip(exps, op))
            if action is DerivativeAction.DIFFERENTIATE:
                factor = 1
                for b, a in zip(exps, op):
                    factor *= perm(b, a)
                c = field.mul(coeff, field.reduce(factor))
                if c != field.zero():
                    out[target] = c
            else:
                out[target] = coeff
    return Form(form.num_vars, form.degree - i, field, out)


def _check_family(forms) -> tuple[int, int, FieldSpec]:
    if not forms:
        raise ValueError("need at least one form")
    first = forms[0]
    for f in forms[1:]:
        if (f.num_vars, f.degree, f.field) != (
            first.num_vars,
            first.degree,
            first.field,
        ):
            raise ParameterMismatchError(
                "forms disagree in variables, degree or field"
            )
    return first.num_vars, first.degree, first.field


def catalecticant(
    forms, i: int, action: DerivativeAction = DerivativeAction.CONTRACT
) -> Matrix:
    """Matrix of degree-i operators acting on the forms.

    One row per (form, degree-i operator monomial) pair, in form order then
    monomial order; one column per degree-(e-i) monomial. Its row space is
    the degree-(e-i) piece of the module the forms generate.
    """
    num_vars, degree, field = _check_family(forms)
    if not 0 <= i <= degree:
        raise ValueError(f"operator degree {i} out of range 0..{degree}")
    ops = monomials_of_degree(num_vars, i)
    cols = space_dim(num_vars, degree - i)
    idx = monomial_index(num_vars, degree - i)
    zero = field.zero()
    rows = []
    for f in forms:
        for op in ops:
            g = apply_operator(op, f, action)
            vec = [zero] * cols
            for exps, coeff in g.terms.items():
                vec[idx[exps]] = coeff
            rows.append(vec)
    return Matrix.from_rows(rows, field, cols=cols)


def derivative_space(
    forms, u: int, action: DerivativeAction = DerivativeAction.CONTRACT
) -> Subspace:
    """Degree-u subspace spanned by all order-(e-u) derivatives of the forms.

    Equals the row space of catalecticant(forms, e-u); computed here from
    the operators that actually divide some term, skipping the zero rows.
    """
    num_vars, degree, field = _check_family(forms)
    if not 0 <= u <= degree:
        raise ValueError(f"degree {u} out of range 0..{degree}")
    i = degree - u
    cols = space_dim(num_vars, u)
    idx = monomial_index(num_vars, u)
    op_order = monomial_index(num_vars, i)
    zero = field.zero()
    rows = []
    for f in forms:
        ops: set[Exponents] = set()
        for exps in f.terms:
            ops.update(_divisors_of_degree(exps, i))
        for op in sorted(ops, key=op_order.get):
            g = apply_operator(op, f, action)
            if g.terms:
                vec = [zero] * cols
                for exps, coeff in g.terms.items():
                    vec[idx[exps]] = coeff
                rows.append(vec)
    if not rows:
        from .linalg import zero_subspace

        return zero_subspace(cols, field)
    return row_space(Matrix.from_rows(rows, field, cols=cols))
