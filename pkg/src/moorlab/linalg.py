"""Sparse formal linear combinations over the rationals, plus exact elimination.

Everything downstream (word algebras, tree operads, pairings) is expressed as
an :class:`Element`: a finite linear combination of hashable basis values with
``fractions.Fraction`` coefficients.  Rank, span and annihilator computations
are done by plain Gaussian elimination over ``Fraction``, so every reported
dimension is exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Scalar = Fraction


def basis_key(value):
    """Canonical sort key for a basis value.

    Strings order as themselves, tuples order slotwise, and any other basis
    type must provide a ``sort_key()`` method.  The leading tag keeps keys of
    different kinds comparable, although a single Element never mixes kinds.
    """
    if isinstance(value, str):
        return ("s", value)
    if isinstance(value, tuple):
        return ("t", len(value), tuple(basis_key(slot) for slot in value))
    sort_key = getattr(value, "sort_key", None)
    if sort_key is None:
        raise TypeError(f"basis value {value!r} has no canonical ordering")
    return ("k:" + type(value).__name__, sort_key())


class Element:
    """A finite linear combination ``sum(coefficient * basis_value)``.

    Zero coefficients are dropped on construction, so two Elements are equal
    exactly when they have the same support and coefficients.  Instances are
    treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        data: dict = {}
        if terms:
            pairs = terms.items() if isinstance(terms, Mapping) else terms
            for basis, coeff in pairs:
                coeff = Fraction(coeff)
                if coeff:
                    acc = data.get(basis, _ZERO) + coeff
                    if acc:
                        data[basis] = acc
                    else:
                        data.pop(basis, None)
        self._terms = data

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def term(cls, basis, coeff=1) -> "Element":
        return cls({basis: Fraction(coeff)})

    def items(self) -> list:
        """Terms as ``(basis, coefficient)`` pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: basis_key(kv[0]))

    def coeff(self, basis) -> Fraction:
        return self._terms.get(basis, _ZERO)

    def support(self) -> list:
        return [basis for basis, _ in self.items()]

    def map_basis(self, func: Callable[[object], "Element"]) -> "Element":
        """Linear extension of a basis map ``func: basis -> Element``."""
        out: dict = {}
        for basis, coeff in self._terms.items():
            for image_basis, image_coeff in func(basis)._terms.items():
                _accumulate(out, image_basis, coeff * image_coeff)
        return _wrap(out)

    def __add__(self, other: "Element") -> "Element":
        out = dict(self._terms)
        for basis, coeff in other._terms.items():
            _accumulate(out, basis, coeff)
        return _wrap(out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return _wrap({basis: -coeff for basis, coeff in self._terms.items()})

    def __rmul__(self, scalar) -> "Element":
        scalar = Fraction(scalar)
        if not scalar:
            return Element()
        return _wrap({basis: scalar * coeff for basis, coeff in self._terms.items()})

    __mul__ = __rmul__

    def __truediv__(self, scalar) -> "Element":
        return Fraction(1, 1) / Fraction(scalar) * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        raise TypeError("Element is not hashable; use basis values as dict keys")

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for basis, coeff in self.items():
            if coeff == 1:
                parts.append(f"{basis}")
            else:
                parts.append(f"{coeff}*{basis}")
        return " + ".join(parts)


_ZERO = Fraction(0)


def _accumulate(data: dict, basis, coeff: Fraction) -> None:
    acc = data.get(basis, _ZERO) + coeff
    if acc:
        data[basis] = acc
    else:
        data.pop(basis, None)


def _wrap(data: dict) -> Element:
    elem = Element.__new__(Element)
    elem._terms = data
    return elem


def _slots(basis) -> tuple:
    return basis if isinstance(basis, tuple) else (basis,)


def tensor(left: Element, right: Element) -> Element:
    """Tensor product; slots concatenate, so the product is flat and associative."""
    out: dict = {}
    for lb, lc in left._terms.items():
        for rb, rc in right._terms.items():
            _accumulate(out, _slots(lb) + _slots(rb), lc * rc)
    return _wrap(out)


def map_slots(func: Callable[[object], Element], tensor_elem: Element) -> Element:
    """Apply a linear basis map to every slot of a tensor Element."""
    out = Element.zero()
    for slots, coeff in tensor_elem.items():
        if not isinstance(slots, tuple):
            raise ValueError(f"term {slots!r} is not a tensor word")
        combined = func(slots[0])
        for slot in slots[1:]:
            combined = tensor(combined, func(slot))
        out = out + coeff * combined
    return out


def memoize_linear(func: Callable[[Element], Element]) -> Callable[[Element], Element]:
    """Cache a linear map on basis values; inputs decompose term by term."""
    cache: dict = {}

    def wrapped(x: Element) -> Element:
        out: dict = {}
        for basis, coeff in x._terms.items():
            image = cache.get(basis)
            if image is None:
                image = func(Element.term(basis))
                cache[basis] = image
            for image_basis, image_coeff in image._terms.items():
                _accumulate(out, image_basis, coeff * image_coeff)
        return _wrap(out)

    return wrapped


def memoize_bilinear(
        func: Callable[[Element, Element], Element]
) -> Callable[[Element, Element], Element]:
    """Cache a bilinear map on pairs of basis values."""
    cache: dict = {}

    def wrapped(x: Element, y: Element) -> Element:
        out: dict = {}
        for xb, xc in x._terms.items():
            for yb, yc in y._terms.items():
                image = cache.get((xb, yb))
                if image is None:
                    image = func(Element.term(xb), Element.term(yb))
                    cache[xb, yb] = image
                scale = xc * yc
                for image_basis, image_coeff in image._terms.items():
                    _accumulate(out, image_basis, scale * image_coeff)
        return _wrap(out)

    return wrapped


def flip(element: Element, i: int) -> Element:
    """Exchange tensor slots ``i`` and ``i+1`` (1-based) in every term."""
    out: dict = {}
    for basis, coeff in element._terms.items():
        if not isinstance(basis, tuple) or not 1 <= i < len(basis):
            raise ValueError(f"cannot flip slots {i},{i + 1} of term {basis!r}")
        swapped = basis[: i - 1] + (basis[i], basis[i - 1]) + basis[i + 1:]
        _accumulate(out, swapped, coeff)
    return _wrap(out)


def union_basis(vectors: Sequence[Element]) -> list:
    seen = set()
    for vector in vectors:
        seen.update(vector._terms)
    return sorted(seen, key=basis_key)


def elements_matrix(vectors: Sequence[Element], basis: Sequence) -> list[list[Fraction]]:
    """Coefficient rows of ``vectors`` with respect to an ordered basis."""
    index = {value: j for j, value in enumerate(basis)}
    rows = []
    for vector in vectors:
        row = [_ZERO] * len(basis)
        for value, coeff in vector._terms.items():
            if value not in index:
                raise ValueError(f"vector term {value!r} outside the ambient basis")
            row[index[value]] = coeff
        rows.append(row)
    return rows


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    matrix = [list(row) for row in rows]
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(matrix)):
            if matrix[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        inv = Fraction(1, 1) / matrix[rank][col]
        matrix[rank] = [entry * inv for entry in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(matrix):
            break
    return matrix[:rank], pivots


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows.

    One kernel vector per free column, in ascending column order; pivot
    entries are filled by back-substitution so the result is canonical.
    """
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    kernel = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [_ZERO] * ncols
        vector[free] = Fraction(1)
        for r, pivot_col in enumerate(pivots):
            vector[pivot_col] = -reduced[r][free]
        kernel.append(vector)
    return kernel


def span_rank(vectors: Sequence[Element]) -> int:
    """Dimension of the span of the given Elements, by exact elimination."""
    basis = union_basis(vectors)
    if not basis:
        return 0
    return matrix_rank(elements_matrix(vectors, basis))


def same_span(first: Sequence[Element], second: Sequence[Element]) -> bool:
    """Whether two families of Elements span the same subspace."""
    basis = union_basis(list(first) + list(second))
    if not basis:
        return True
    rows_a = rref(elements_matrix(first, basis))[0]
    rows_b = rref(elements_matrix(second, basis))[0]
    return rows_a == rows_b


def annihilator(
    vectors: Sequence[Element],
    basis: Sequence,
    pairing: Callable[[object, object], Fraction],
) -> list[Element]:
    """Everything in the span of ``basis`` pairing to zero with all ``vectors``.

    The bilinear form is given by its values on basis pairs.  With no input
    vectors the whole ambient space comes back, one Element per basis value.
    """
    ordered = list(basis)
    constraints = []
    for vector in vectors:
        row = []
        for candidate in ordered:
            total = _ZERO
            for value, coeff in vector._terms.items():
                total += coeff * Fraction(pairing(value, candidate))
            row.append(total)
        constraints.append(row)
    kernel = nullspace(constraints, len(ordered))
    result = []
    for vector in kernel:
        result.append(Element({b: c for b, c in zip(ordered, vector) if c}))
    return result
