"""Value types shared by the toric modules: exponent vectors, configurations and binomials."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from core.errors import InvalidInputError

ExponentVector = tuple[int, ...]


def as_vector(values: Iterable[int]) -> ExponentVector:
    """Freeze an integer sequence into an exponent vector; floats, bools and strings are rejected."""
    out = tuple(values)
    bad = [v for v in out if isinstance(v, bool) or not isinstance(v, int)]
    if bad:
        raise InvalidInputError(
            f"exponent vectors hold integers only, got {bad[0]!r} in {list(out)}", "MALFORMED_VECTOR"
        )
    return out


def variable_names(n: int, r: int) -> list[str]:
    """``x1..xn`` followed by ``y1..yr``."""
    return [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, r + 1)]


@dataclass(frozen=True)
class ToricConfiguration:
    """
    The set T = {v_1 = c·e_1, ..., v_n = c·e_n, w_1, ..., w_r} of an affine simplicial toric variety.

    ``rows`` holds the exponent rows ``(a_i1, ..., a_in)`` of the ``y`` parametrization; the codimension is ``r``.
    """

    n: int
    c: int
    rows: tuple[ExponentVector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(as_vector(row) for row in self.rows))
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInputError(f"ambient dimension n must be a positive integer, got {self.n!r}")
        if not isinstance(self.c, int) or self.c < 1:
            raise InvalidInputError(f"c must be a positive integer, got {self.c!r}", "INVALID_CONFIGURATION")
        for i, row in enumerate(self.rows, start=1):
            if len(row) != self.n:
                raise InvalidInputError(
                    f"row w{i} has length {len(row)}, expected {self.n}", "DIMENSION_MISMATCH"
                )
            if any(a < 0 for a in row):
                raise InvalidInputError(f"row w{i} has a negative exponent: {row}", "NEGATIVE_COORDINATE")
            if not any(row):
                raise InvalidInputError(f"row w{i} is the zero vector", "INVALID_CONFIGURATION")
        gens = self.generators
        if len(set(gens)) != len(gens):
            raise InvalidInputError("configuration contains duplicate generators", "DUPLICATE_GENERATOR")

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def generators(self) -> tuple[ExponentVector, ...]:
        vs = tuple(tuple(self.c if j == i else 0 for j in range(self.n)) for i in range(self.n))
        return vs + self.rows

    @property
    def num_vars(self) -> int:
        return self.n + self.r

    def variable_names(self) -> list[str]:
        return variable_names(self.n, self.r)

    def image(self, exponents: Sequence[int]) -> ExponentVector:
        """Configuration-matrix image ``A·z`` of an exponent tuple over the n + r generators."""
        if len(exponents) != self.num_vars:
            raise InvalidInputError(
                f"exponent tuple has {len(exponents)} entries, configuration has {self.num_vars} variables",
                "ARITY_MISMATCH",
            )
        out = [0] * self.n
        for z, gen in zip(exponents, self.generators, strict=True):
            if z:
                for j, a in enumerate(gen):
                    out[j] += z * a
        return tuple(out)


def _orientation_key(exponents: ExponentVector) -> ExponentVector:
    # x_1 < ... < x_n < y_1 < ... < y_r：最大变量最先比较
    return tuple(reversed(exponents))


def _monomial_text(exponents: ExponentVector, names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(exponents, names, strict=True):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Binomial:
    """
    ``x^plus - x^minus`` over the variables ``x1..xn, y1..yr``.

    ``plus``/``minus`` are full exponent tuples of length n + r; ``n`` records how many of them are x variables.
    """

    plus: ExponentVector
    minus: ExponentVector
    n: int

    def __post_init__(self):
        object.__setattr__(self, "plus", as_vector(self.plus))
        object.__setattr__(self, "minus", as_vector(self.minus))
        if len(self.plus) != len(self.minus):
            raise InvalidInputError("binomial halves have different arity", "ARITY_MISMATCH")
        if self.n < 0 or self.n > len(self.plus):
            raise InvalidInputError(f"invalid x-variable count {self.n} for arity {len(self.plus)}")
        if any(e < 0 for e in self.plus) or any(e < 0 for e in self.minus):
            raise InvalidInputError("binomial exponents must be nonnegative", "NEGATIVE_COORDINATE")
        if self.plus == self.minus:
            raise InvalidInputError("binomial halves coincide (the zero polynomial)", "ZERO_BINOMIAL")

    @classmethod
    def oriented(cls, a: Sequence[int], b: Sequence[int], n: int) -> Binomial:
        """Build a binomial in canonical orientation: the lexicographically larger monomial is ``plus``."""
        a, b = as_vector(a), as_vector(b)
        if _orientation_key(a) >= _orientation_key(b):
            return cls(a, b, n)
        return cls(b, a, n)

    @property
    def num_vars(self) -> int:
        return len(self.plus)

    @property
    def r(self) -> int:
        return len(self.plus) - self.n

    def is_canonical(self) -> bool:
        return _orientation_key(self.plus) > _orientation_key(self.minus)

    def canonical(self) -> Binomial:
        return self if self.is_canonical() else Binomial(self.minus, self.plus, self.n)

    def padded(self, r: int) -> Binomial:
        """Same binomial in a ring with ``r`` y-variables (r ≥ current r)."""
        if r < self.r:
            raise InvalidInputError(f"cannot shrink binomial from {self.r} to {r} y-variables")
        pad = (0,) * (r - self.r)
        return Binomial(self.plus + pad, self.minus + pad, self.n)

    def variable_names(self) -> list[str]:
        return variable_names(self.n, self.r)

    def to_text(self) -> str:
        names = self.variable_names()
        return f"{_monomial_text(self.plus, names)} - {_monomial_text(self.minus, names)}"

    def __str__(self) -> str:
        return self.to_text()
