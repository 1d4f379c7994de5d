"""Finitely generated submodules of the dual polynomial ring.

A module here is a list of linearly independent homogeneous forms of one
degree e; the polynomial ring acts by contraction (or differentiation).
The h-vector entry in degree u is the dimension of the degree-u piece,
i.e. of the span of all order-(e-u) derivatives of the generators. The
socle degree e always contributes dim = number of generators, the type.

Randomized operations (generic quotients, generator re-mixing) are fully
reproducible: every draw comes from a Mersenne Twister seeded through a
sha256 counter derivation of the caller's seed.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache, reduce
from itertools import combinations

from .fields import FieldSpec, Scalar
from .linalg import (
    Matrix,
    Subspace,
    rank,
    relative_dim,
    subspace_intersection,
    subspace_sum,
)
from .polynomials import (
    DerivativeAction,
    Form,
    FormParseError,
    derivative_space,
    parse_form,
    space_dim,
)

COEFF_RANGE = 10**6  # random coefficients are drawn from [1, 10^6]


class DependentGeneratorsError(ValueError):
    """The given generators are linearly dependent (or zero)."""


class DegenerateSampleError(RuntimeError):
    """Random sampling failed to produce an independent family."""


class ModuleFileError(ValueError):
    """Malformed module file; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def derive_seed(*parts) -> int:
    """Deterministic 64-bit seed derived from the given labels."""
    data = ":".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(data).digest()[:8], "big")


def random_coefficient(rng: random.Random, field: FieldSpec) -> int:
    """Nonzero integer coefficient: [1, 10^6] modular, [-10^6, 10^6] rational."""
    if field.is_modular:
        return rng.randint(1, COEFF_RANGE)
    while True:
        v = rng.randint(-COEFF_RANGE, COEFF_RANGE)
        if v:
            return v


@dataclass(frozen=True)
class InverseSystemModule:
    """Independent degree-e generators over a common field, with a label."""

    generators: tuple[Form, ...]
    field: FieldSpec
    label: str = ""

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValueError("a module needs at least one generator")
        g0 = self.generators[0]
        if g0.degree < 1:
            raise ValueError("generator degree must be at least 1")
        for g in self.generators:
            if g.field != self.field:
                raise ValueError("generator field disagrees with module field")
            if (g.num_vars, g.degree) != (g0.num_vars, g0.degree):
                raise ValueError("generators disagree in variables or degree")
        if self.field.is_modular and self.field.prime <= g0.degree:
            raise ValueError(
                f"modulus {self.field.prime} must exceed the socle degree {g0.degree}"
            )
        vecs = [g.coefficient_vector() for g in self.generators]
        cols = space_dim(g0.num_vars, g0.degree)
        if rank(Matrix.from_rows(vecs, self.field, cols=cols)) != len(self.generators):
            raise DependentGeneratorsError(
                f"{len(self.generators)} generators span a smaller space"
            )

    @property
    def num_vars(self) -> int:
        return self.generators[0].num_vars

    @property
    def socle_degree(self) -> int:
        return self.generators[0].degree

    @property
    def type(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class QuotientSample:
    """One random type-c quotient: the combination matrix and its h-vector."""

    parent: InverseSystemModule
    c: int
    coefficients: tuple[tuple[int, ...], ...]
    seed: int
    h: tuple[int, ...]


@lru_cache(maxsize=4096)
def h_vector(m: InverseSystemModule) -> tuple[int, ...]:
    """Dimensions of the graded pieces, from degree 0 to the socle degree."""
    return tuple(
        derivative_space(m.generators, u).dim for u in range(m.socle_degree + 1)
    )


@lru_cache(maxsize=16384)
def _single_spaces(m: InverseSystemModule, u: int) -> tuple[Subspace, ...]:
    return tuple(derivative_space([g], u) for g in m.generators)


def _combine_forms(
    generators: tuple[Form, ...], coeffs, field: FieldSpec
) -> Form:
    g0 = generators[0]
    acc: dict[tuple[int, ...], Scalar] = {}
    zero = field.zero()
    for coeff, g in zip(coeffs, generators):
        c = field.reduce(coeff)
        if c == zero:
            continue
        for exps, val in g.terms.items():
            cur = acc.get(exps, zero)
            acc[exps] = field.add(cur, field.mul(c, val))
    acc = {m: v for m, v in acc.items() if v != zero}
    return Form(g0.num_vars, g0.degree, field, acc)


def sample_generic_quotient(
    m: InverseSystemModule,
    c: int,
    seed: int = 0,
    coefficients=None,
) -> QuotientSample:
    """Submodule generated by c random combinations of the generators.

    Draws a c-by-t integer matrix with nonzero random entries and retries
    (up to 100 derived attempts) until the combinations are independent.
    An explicit `coefficients` matrix skips the sampling; a 0/1 selection
    matrix, for instance, picks out a plain subset of the generators.
    """
    t = m.type
    if not 1 <= c <= t - 1:
        raise ValueError(f"quotient type {c} out of range 1..{t - 1}")
    if coefficients is not None:
        rows = tuple(tuple(int(x) for x in row) for row in coefficients)
        if len(rows) != c or any(len(r) != t for r in rows):
            raise ValueError(f"coefficient matrix must be {c}x{t}")
        forms = tuple(_combine_forms(m.generators, row, m.field) for row in rows)
        sub = InverseSystemModule(forms, m.field, label=f"{m.label}/type{c}")
        return QuotientSample(m, c, rows, seed, h_vector(sub))
    for attempt in range(100):
        rng = random.Random(derive_seed(seed, "quotient", attempt))
        rows = tuple(
            tuple(random_coefficient(rng, m.field) for _ in range(t))
            for _ in range(c)
        )
        mat = Matrix.from_rows(rows, m.field, cols=t)
        if rank(mat) != c:
            continue
        forms = tuple(_combine_forms(m.generators, row, m.field) for row in rows)
        try:
            sub = InverseSystemModule(forms, m.field, label=f"{m.label}/type{c}")
        except DependentGeneratorsError:
            continue
        return QuotientSample(m, c, rows, seed, h_vector(sub))
    raise DegenerateSampleError(
        f"no independent {c}-of-{t} combination found in 100 attempts"
    )


def generic_quotient_trials(
    m: InverseSystemModule, c: int, trials: int = 5, seed: int = 0
) -> list[QuotientSample]:
    """Independent quotient samples with per-trial derived seeds."""
    if trials < 1:
        raise ValueError("need at least one trial")
    return [
        sample_generic_quotient(m, c, seed=derive_seed(seed, "trial", k))
        for k in range(trials)
    ]


def empirical_generic_h(
    m: InverseSystemModule, c: int, trials: int = 5, seed: int = 0
) -> tuple[int, ...]:
    """Entrywise max of sampled quotient h-vectors.

    A certified lower bound for the generic quotient h-vector, and equal
    to it unless every trial landed in the thin non-generic locus.
    """
    samples = generic_quotient_trials(m, c, trials, seed)
    return tuple(max(col) for col in zip(*(s.h for s in samples)))


def remix_generators(m: InverseSystemModule, seed: int = 0) -> InverseSystemModule:
    """Same module, re-generated by t random independent combinations.

    Useful because overlap statistics below depend on the chosen
    generators; a random re-mix realizes the generic choice while leaving
    the module (hence its h-vector) untouched.
    """
    t = m.type
    for attempt in range(100):
        rng = random.Random(derive_seed(seed, "remix", attempt))
        rows = [
            [random_coefficient(rng, m.field) for _ in range(t)] for _ in range(t)
        ]
        if rank(Matrix.from_rows(rows, m.field, cols=t)) != t:
            continue
        forms = tuple(_combine_forms(m.generators, row, m.field) for row in rows)
        return InverseSystemModule(forms, m.field, label=m.label)
    raise DegenerateSampleError("no invertible re-mix found in 100 attempts")


def _check_degree(m: InverseSystemModule, u: int) -> None:
    if not 1 <= u <= m.socle_degree - 1:
        raise ValueError(
            f"degree u={u} out of range 1..{m.socle_degree - 1}"
        )


def intersection_dim(forms, u: int) -> int:
    """Dimension of the intersection of the forms' degree-u derivative spaces."""
    family = list(forms)
    if not family:
        raise ValueError("need at least one form")
    e = family[0].degree
    if not 1 <= u <= e - 1:
        raise ValueError(f"degree u={u} out of range 1..{e - 1}")
    spaces = [derivative_space([f], u) for f in family]
    return reduce(subspace_intersection, spaces).dim


def inclusion_exclusion_sum(m: InverseSystemModule, u: int) -> int:
    """Alternating sum of intersection dimensions over generator subsets.

    Pairs count positive, triples negative, and so on; for generically
    chosen generators this equals t * H_u(generic Gorenstein quotient)
    minus h_u. Use remix_generators first when that identity is wanted.
    """
    _check_degree(m, u)
    t = m.type
    if t < 2:
        raise ValueError("inclusion-exclusion needs at least two generators")
    spaces = _single_spaces(m, u)
    total = 0
    for q in range(2, t + 1):
        sign = 1 if q % 2 == 0 else -1
        for subset in combinations(range(t), q):
            inter = reduce(subspace_intersection, (spaces[j] for j in subset))
            total += sign * inter.dim
    return total


def relative_intersection_dim(
    m: InverseSystemModule, q: int, u: int, subset=None
) -> int:
    """Dimension of the q-fold intersection modulo the complement's span.

    Intersect the degree-u spaces of q chosen generators, then quotient by
    the sum of the remaining generators' spaces. Defaults to the first q
    generators; for generic generators the value is independent of the
    choice of subset.
    """
    _check_degree(m, u)
    t = m.type
    if not 1 <= q <= t:
        raise ValueError(f"subset size {q} out of range 1..{t}")
    if subset is None:
        subset = tuple(range(q))
    subset = tuple(subset)
    if len(set(subset)) != q or any(not 0 <= j < t for j in subset):
        raise ValueError(f"subset {subset} is not {q} distinct indices below {t}")
    spaces = _single_spaces(m, u)
    inter = reduce(subspace_intersection, (spaces[j] for j in subset))
    rest = [spaces[j] for j in range(t) if j not in subset]
    if not rest:
        return inter.dim
    return relative_dim(inter, reduce(subspace_sum, rest))


# ---------------------------------------------------------------------------
# module files

def parse_module_file(
    text: str, field_override: FieldSpec | None = None
) -> InverseSystemModule:
    """Read a module from its text format.

    Header lines `vars: r`, `degree: e`, `prime: p` (or `prime: rational`),
    then one `F<k>: <expression>` line per generator, numbered from 1.
    Blank lines and lines starting with '#' are skipped. A field override
    reinterprets the integer literals over that field instead of the
    header's.
    """
    num_vars = degree = None
    field: FieldSpec | None = None
    gen_texts: list[tuple[int, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ModuleFileError("expected 'key: value'", lineno)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "vars":
            num_vars = _parse_positive(value, "vars", lineno)
        elif key == "degree":
            degree = _parse_positive(value, "degree", lineno)
        elif key == "prime":
            if value == "rational":
                field = FieldSpec.rational()
            else:
                try:
                    field = FieldSpec.modular(int(value))
                except ValueError as exc:
                    raise ModuleFileError(str(exc), lineno) from exc
        elif key.startswith("F") and key[1:].isdigit():
            gen_texts.append((int(key[1:]), value, lineno))
        else:
            raise ModuleFileError(f"unknown key {key!r}", lineno)
    if num_vars is None or degree is None:
        raise ModuleFileError("missing 'vars' or 'degree' header", 1)
    if field_override is not None:
        field = field_override
    elif field is None:
        field = FieldSpec.modular()
    if not gen_texts:
        raise ModuleFileError("no generator lines", 1)
    expected = list(range(1, len(gen_texts) + 1))
    if sorted(k for k, _, _ in gen_texts) != expected:
        raise ModuleFileError(
            f"generator labels must be F1..F{len(gen_texts)}", gen_texts[0][2]
        )
    forms = []
    for _, expr, lineno in sorted(gen_texts):
        try:
            forms.append(parse_form(expr, num_vars, degree, field))
        except FormParseError as exc:
            raise ModuleFileError(str(exc), lineno) from exc
    try:
        return InverseSystemModule(tuple(forms), field)
    except (DependentGeneratorsError, ValueError) as exc:
        raise ModuleFileError(str(exc), 1) from exc


def _parse_positive(value: str, what: str, lineno: int) -> int:
    try:
        n = int(value)
    except ValueError as exc:
        raise ModuleFileError(f"{what} must be an integer", lineno) from exc
    if n < 1:
        raise ModuleFileError(f"{what} must be positive", lineno)
    return n


def module_to_text(m: InverseSystemModule) -> str:
    """Serialize in the same format parse_module_file reads."""
    prime = m.field.prime if m.field.is_modular else "rational"
    lines = [f"vars: {m.num_vars}", f"degree: {m.socle_degree}", f"prime: {prime}"]
    for k, g in enumerate(m.generators, start=1):
        lines.append(f"F{k}: {g.to_text()}")
    return "\n".join(lines) + "\n"
