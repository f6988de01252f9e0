"""Exact sparse multivariate polynomials over Q on a fixed table of variables.

A monomial is packed into a single Python int.  Each variable owns a
fixed-width bit field (the first variable in the table sits in the most
significant field) and the total degree sits above all fields.  With that
layout

* multiplying monomials is integer addition,
* comparing packed ints is graded-lex comparison in table order,
* divisibility is a borrow test against per-field guard bits.

Coefficients are ``int`` or ``fractions.Fraction``; nothing here ever touches
a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class UniverseError(ValueError):
    """Operands live on different variable tables."""


class ShapeError(ValueError):
    """Matrix shape does not fit the operation."""


class EvaluationError(ValueError):
    """A point is missing a value for some variable."""


class NotHomogeneous(ValueError):
    """Terms of a polynomial have different weighted degrees."""


class NotDivisible(ArithmeticError):
    """Exact division left a remainder; the remainder is kept as a witness."""

    def __init__(self, remainder: "Polynomial"):
        super().__init__(f"nonzero remainder with {len(remainder)} terms")
        self.remainder = remainder


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return _norm(Fraction(a) / b)


def _check_scalar(c) -> Scalar:
    if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
        raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")
    return c


class VarTable:
    """Ordered, immutable list of variable names with packed-monomial helpers."""

    def __init__(self, names: Iterable[str], exp_bits: int = 8):
        names = tuple(names)
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate variable names: {dup}")
        if exp_bits < 2:
            raise ValueError("exp_bits must be at least 2")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.width = exp_bits
        self.max_exp = (1 << (exp_bits - 1)) - 1
        n = len(names)
        self.deg_shift = n * exp_bits
        self._field = (1 << exp_bits) - 1
        self._guard = sum(1 << (k * exp_bits + exp_bits - 1) for k in range(n))
        self._unpack_cache: dict[int, tuple[tuple[int, int], ...]] = {}
        self._vars: dict[str, Polynomial] = {}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    def __repr__(self) -> str:
        return f"VarTable({len(self.names)} vars)"

    def shift(self, i: int) -> int:
        return (len(self.names) - 1 - i) * self.width

    def pack(self, exps: Mapping[str, int] | Sequence[int]) -> int:
        if isinstance(exps, Mapping):
            items = [(self.position(k), e) for k, e in exps.items()]
        else:
            if len(exps) != len(self.names):
                raise ShapeError("exponent vector length does not match the table")
            items = list(enumerate(exps))
        m = deg = 0
        for i, e in items:
            if e < 0 or e > self.max_exp:
                raise OverflowError(f"exponent {e} out of range for {self.names[i]}")
            m += e << self.shift(i)
            deg += e
        return m + (deg << self.deg_shift)

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UniverseError(f"unknown variable {name!r}") from None

    def unpack(self, m: int) -> tuple[tuple[int, int], ...]:
        """Sparse exponents ``((var_index, exp), ...)`` sorted by index."""
        hit = self._unpack_cache.get(m)
        if hit is not None:
            return hit
        body = m & ((1 << self.deg_shift) - 1)
        out = []
        w, n, field = self.width, len(self.names), self._field
        while body:
            k = ((body & -body).bit_length() - 1) // w
            out.append((n - 1 - k, (body >> (k * w)) & field))
            body &= ~(field << (k * w))
        res = tuple(reversed(out))
        if len(self._unpack_cache) < 1 << 20:
            self._unpack_cache[m] = res
        return res

    def dense(self, m: int) -> tuple[int, ...]:
        v = [0] * len(self.names)
        for i, e in self.unpack(m):
            v[i] = e
        return tuple(v)

    def degree_of(self, m: int) -> int:
        return m >> self.deg_shift

    def divides(self, n: int, m: int) -> bool:
        """True when monomial ``n`` divides monomial ``m``."""
        g = self._guard
        return ((m | g) - n) & g == g

    def var(self, name: str) -> "Polynomial":
        p = self._vars.get(name)
        if p is None:
            i = self.position(name)
            p = Polynomial(self, {(1 << self.shift(i)) + (1 << self.deg_shift): 1})
            self._vars[name] = p
        return p

    def vars(self, names: str | Iterable[str]) -> tuple["Polynomial", ...]:
        if isinstance(names, str):
            names = names.split()
        return tuple(self.var(n) for n in names)

    def const(self, c: Scalar) -> "Polynomial":
        c = _check_scalar(c)
        return Polynomial(self, {0: _norm(c)} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomial -> coefficient."""

    __slots__ = ("vt", "terms", "_hash")

    def __init__(self, vt: VarTable, terms: dict[int, Scalar] | None = None):
        self.vt = vt
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vt is not self.vt:
                raise UniverseError("polynomials over different variable tables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.vt.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        res = dict(big)
        for m, c in small.items():
            v = res.get(m, 0) + c
            if v:
                res[m] = v
            else:
                del res[m]
        return Polynomial(self.vt, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vt, {m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        res = dict(self.terms)
        for m, c in o.terms.items():
            v = res.get(m, 0) - c
            if v:
                res[m] = v
            else:
                del res[m]
        return Polynomial(self.vt, res)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Polynomial(self.vt, {})
            return Polynomial(self.vt, {m: _norm(c * other) for m, c in self.terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.terms, o.terms
        if not a or not b:
            return Polynomial(self.vt, {})
        if self.degree() + o.degree() > self.vt.max_exp:
            self._check_exponents(o)
        if len(a) < len(b):
            a, b = b, a
        res: dict[int, Scalar] = {}
        get = res.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                k = ma + mb
                res[k] = get(k, 0) + ca * cb
        return Polynomial(self.vt, {m: c for m, c in res.items() if c})

    __rmul__ = __mul__

    def _check_exponents(self, other: "Polynomial") -> None:
        # slow path: only reached when total degrees could overflow a field
        mx = self.max_exponents()
        for i, e in other.max_exponents().items():
            if mx.get(i, 0) + e > self.vt.max_exp:
                raise OverflowError(f"exponent of {self.vt.names[i]} exceeds {self.vt.max_exp}")

    def max_exponents(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for m in self.terms:
            for i, e in self.vt.unpack(m):
                if e > out.get(i, 0):
                    out[i] = e
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            return Polynomial(self.vt, {m: _div(c, other) for m, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.vt.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vt is other.vt and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, 0)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.terms) >> self.vt.deg_shift

    def leading(self) -> tuple[int, Scalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms)
        return m, self.terms[m]

    def sorted_terms(self) -> list[tuple[int, Scalar]]:
        return sorted(self.terms.items(), reverse=True)

    def variables(self) -> list[str]:
        seen: set[int] = set()
        for m in self.terms:
            seen.update(i for i, _ in self.vt.unpack(m))
        return [self.vt.names[i] for i in sorted(seen)]

    def coefficient(self, exps: Mapping[str, int]) -> Scalar:
        return self.terms.get(self.vt.pack(exps), 0)

    def degree_in(self, name: str) -> int:
        i = self.vt.position(name)
        return max((dict(self.vt.unpack(m)).get(i, 0) for m in self.terms), default=-1)

    def coefficients_in(self, name: str) -> dict[int, "Polynomial"]:
        """Split as a polynomial in one variable: exponent -> coefficient polynomial."""
        vt = self.vt
        i = vt.position(name)
        unit = (1 << vt.shift(i)) + (1 << vt.deg_shift)
        out: dict[int, dict[int, Scalar]] = {}
        for m, c in self.terms.items():
            e = dict(vt.unpack(m)).get(i, 0)
            out.setdefault(e, {})[m - e * unit] = c
        return {e: Polynomial(vt, t) for e, t in sorted(out.items())}

    # -- calculus and evaluation -----------------------------------------
    def diff(self, name: str) -> "Polynomial":
        vt = self.vt
        i = vt.position(name)
        unit = (1 << vt.shift(i)) + (1 << vt.deg_shift)
        res = {}
        for m, c in self.terms.items():
            e = (m >> vt.shift(i)) & vt._field
            if e:
                res[m - unit] = c * e
        return Polynomial(vt, res)

    def evaluate(self, point: Mapping[str, Scalar]) -> Scalar:
        vt = self.vt
        values: dict[int, Scalar] = {}
        total: Scalar = 0
        powers: dict[tuple[int, int], Scalar] = {}
        for m, c in self.terms.items():
            term = c
            for i, e in vt.unpack(m):
                key = (i, e)
                pv = powers.get(key)
                if pv is None:
                    if i not in values:
                        name = vt.names[i]
                        if name not in point:
                            raise EvaluationError(f"no value for variable {name!r}")
                        values[i] = _check_scalar(point[name])
                    pv = values[i] ** e
                    powers[key] = pv
                term = term * pv
                if not term:
                    break
            total += term
        return _norm(total) if isinstance(total, Fraction) else total

    def subs(self, assignments: Mapping[str, "Polynomial | Scalar"]) -> "Polynomial":
        return Substitution(self.vt, assignments)(self)

    def weighted_degree(self, weights: Mapping[str, int]) -> int:
        return weighted_degree(self, weights)

    # -- text -------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        vt = self.vt
        parts = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            c = _norm(c)
            neg = c < 0
            a = -c if neg else c
            factors = []
            for i, e in vt.unpack(m):
                factors.append(vt.names[i] if e == 1 else f"{vt.names[i]}^{e}")
            if a != 1 or not factors:
                factors.insert(0, str(a))
            body = "*".join(factors)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        text = self.to_text()
        if len(text) > 200:
            text = text[:200] + "..."
        return f"Polynomial({text})"


class Substitution:
    """Ring homomorphism fixing unassigned variables."""

    def __init__(self, vt: VarTable, assignments: Mapping[str, "Polynomial | Scalar"]):
        self.vt = vt
        self.assignments: dict[str, Polynomial] = {}
        for name, img in assignments.items():
            vt.position(name)
            if isinstance(img, Polynomial):
                if img.vt is not vt:
                    raise UniverseError(f"image of {name} lives on another table")
            else:
                img = vt.const(_check_scalar(img))
            self.assignments[name] = img
        self._by_index = {vt.index[n]: p for n, p in self.assignments.items()}

    def __repr__(self):
        return f"Substitution({sorted(self.assignments)})"

    def __getitem__(self, name: str) -> Polynomial:
        return self.assignments.get(name, self.vt.var(name))

    def items(self):
        return self.assignments.items()

    def __call__(self, p: Polynomial) -> Polynomial:
        if p.vt is not self.vt:
            raise UniverseError("polynomial lives on another table")
        if not self._by_index:
            return p
        vt = self.vt
        imgs = self._by_index
        groups: dict[tuple, dict[int, Scalar]] = {}
        for m, c in p.terms.items():
            key = []
            fixed = m
            for i, e in vt.unpack(m):
                if i in imgs:
                    key.append((i, e))
                    fixed -= (e << vt.shift(i)) + (e << vt.deg_shift)
            groups.setdefault(tuple(key), {})[fixed] = c
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            r = powers.get((i, e))
            if r is None:
                r = imgs[i] if e == 1 else power(i, e - 1) * imgs[i]
                powers[(i, e)] = r
            return r

        acc: dict[int, Scalar] = {}
        for key, fixed_terms in groups.items():
            img = Polynomial(vt, fixed_terms)
            for i, e in key:
                img = img * power(i, e)
                if not img.terms:
                    break
            for m, c in img.terms.items():
                acc[m] = acc.get(m, 0) + c
        return Polynomial(vt, {m: c for m, c in acc.items() if c})

    def then(self, other: "Substitution") -> "Substitution":
        """Composite map ``x -> other(self(x))``."""
        names = set(self.assignments) | set(other.assignments)
        return Substitution(self.vt, {n: other(self[n]) for n in sorted(names, key=self.vt.index.get)})


def weighted_degree(p: Polynomial, weights: Mapping[str, int]) -> int:
    if not p.terms:
        raise ValueError("the zero polynomial has no weighted degree")
    vt = p.vt
    w = [0] * len(vt)
    for name, val in weights.items():
        if name in vt.index:
            w[vt.index[name]] = val
    degrees = set()
    for m in p.terms:
        degrees.add(sum(w[i] * e for i, e in vt.unpack(m)))
        if len(degrees) > 1:
            raise NotHomogeneous(f"terms of degrees {sorted(degrees)}")
    return degrees.pop()


def is_homogeneous(p: Polynomial, weights: Mapping[str, int]) -> bool:
    try:
        weighted_degree(p, weights)
    except NotHomogeneous:
        return False
    return True


def divide(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Single-divisor division under graded-lex: ``p = q*quot + rem``.

    No term of ``rem`` is divisible by the leading monomial of ``q``.
    """
    if p.vt is not q.vt:
        raise UniverseError("polynomials over different variable tables")
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    vt = p.vt
    lm, lc = q.leading()
    tail = [(m, c) for m, c in q.terms.items() if m != lm]
    work = dict(p.terms)
    heap = [-m for m in work]
    heapify(heap)
    quot: dict[int, Scalar] = {}
    rem: dict[int, Scalar] = {}
    while heap:
        m = -heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        if not vt.divides(lm, m):
            rem[m] = c
            continue
        qm = m - lm
        qc = _div(c, lc)
        quot[qm] = qc
        for m2, c2 in tail:
            k = qm + m2
            v = work.get(k)
            if v is None:
                work[k] = -qc * c2
                heappush(heap, -k)
            else:
                v -= qc * c2
                if v:
                    work[k] = v
                else:
                    del work[k]
    return Polynomial(vt, quot), Polynomial(vt, rem)


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    quot, rem = divide(p, q)
    if rem.terms:
        raise NotDivisible(rem)
    return quot


def divides(q: Polynomial, p: Polynomial) -> bool:
    return not divide(p, q)[1].terms


# ---------------------------------------------------------------------------
# matrices


class PolyMatrix:
    """Rectangular matrix of polynomials, stored row-major and never mutated."""

    __slots__ = ("vt", "rows", "cols", "entries")

    def __init__(self, vt: VarTable, rows: Sequence[Sequence["Polynomial | Scalar"]]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        self.vt = vt
        self.rows = len(rows)
        self.cols = ncols
        ents = []
        for r in rows:
            for e in r:
                if isinstance(e, Polynomial):
                    if e.vt is not vt:
                        raise UniverseError("entry lives on another table")
                    ents.append(e)
                else:
                    ents.append(vt.const(e))
        self.entries = tuple(ents)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Polynomial]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[Polynomial]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> list[list[Polynomial]]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self, idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.vt, [[self[i, j] for j in idx] for i in range(self.rows)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.vt, [[self[i, j] for j in cols] for i in rows])

    def delete(self, i: int, j: int) -> "PolyMatrix":
        return self.submatrix([r for r in range(self.rows) if r != i],
                              [c for c in range(self.cols) if c != j])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.vt, [self.col(j) for j in range(self.cols)])

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def map(self, f: Callable[[Polynomial], Polynomial]) -> "PolyMatrix":
        return PolyMatrix(self.vt, [[f(e) for e in self.row(i)] for i in range(self.rows)])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            line = []
            for j in range(other.cols):
                acc = self.vt.zero()
                for k in range(self.cols):
                    if r[k].terms and other[k, j].terms:
                        acc = acc + r[k] * other[k, j]
                line.append(acc)
            out.append(line)
        return PolyMatrix(self.vt, out)

    def _zip(self, other: "PolyMatrix", op) -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix(self.vt, [[op(self[i, j], other[i, j]) for j in range(self.cols)]
                                    for i in range(self.rows)])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self._zip(other, lambda a, b: a - b)

    def scale(self, c: "Polynomial | Scalar") -> "PolyMatrix":
        return self.map(lambda e: e * c)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def is_zero(self) -> bool:
        return all(not e.terms for e in self.entries)

    def is_skew(self) -> bool:
        if self.rows != self.cols:
            return False
        return all((self[i, j] + self[j, i]).is_zero()
                   for i in range(self.rows) for j in range(i, self.cols))

    def evaluate(self, point: Mapping[str, Scalar]) -> list[list[Scalar]]:
        return [[e.evaluate(point) for e in self.row(i)] for i in range(self.rows)]

    def adjugate(self) -> "PolyMatrix":
        """Classical adjoint: ``A @ adj(A) = det(A) * I``."""
        n = self.rows
        if n != self.cols:
            raise ShapeError("adjugate of a non-square matrix")
        if n == 1:
            return PolyMatrix(self.vt, [[1]])
        cof = [[determinant(self.delete(i, j)) * (-1 if (i + j) % 2 else 1) for j in range(n)]
               for i in range(n)]
        return PolyMatrix(self.vt, cof).transpose()

    def to_text(self) -> str:
        return "\n".join("[" + ", ".join(e.to_text() for e in self.row(i)) + "]"
                         for i in range(self.rows))

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


def identity(vt: VarTable, n: int) -> PolyMatrix:
    return PolyMatrix(vt, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def column(vt: VarTable, entries: Sequence["Polynomial | Scalar"]) -> PolyMatrix:
    return PolyMatrix(vt, [[e] for e in entries])


def _generic_det(rows: list[list], exact: Callable, zero, one):
    n = len(rows)
    if n == 0:
        return one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a = rows
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    # Bareiss fraction-free elimination
    a = [list(r) for r in rows]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return zero
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def determinant(m: PolyMatrix) -> Polynomial:
    if m.rows != m.cols:
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    return _generic_det(m.tolist(), exact_divide, m.vt.zero(), m.vt.const(1))


def det_values(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant of a square matrix of exact scalars."""
    rows = [list(r) for r in rows]
    if any(len(r) != len(rows) for r in rows):
        raise ShapeError("determinant of a non-square matrix")
    return _norm(Fraction(_generic_det(rows, _div, 0, 1)))


def _generic_pf(rows: list[list], zero):
    n = len(rows)
    if n == 0:
        return zero + 1
    if n == 2:
        return rows[0][1]
    total = zero
    rest_idx = list(range(1, n))
    for pos, j in enumerate(rest_idx):
        a = rows[0][j]
        if not a:
            continue
        keep = [k for k in rest_idx if k != j]
        sub = [[rows[r][c] for c in keep] for r in keep]
        term = a * _generic_pf(sub, zero)
        total = total - term if pos % 2 else total + term
    return total


def pfaffian(m: PolyMatrix) -> Polynomial:
    if m.rows != m.cols or m.rows % 2:
        raise ShapeError(f"Pfaffian needs an even square matrix, got {m.shape}")
    if not m.is_skew():
        raise ShapeError("Pfaffian of a non-skew-symmetric matrix")
    return _generic_pf(m.tolist(), m.vt.zero())


def pfaffian_values(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(rows)
    if n % 2 or any(len(r) != n for r in rows):
        raise ShapeError("Pfaffian needs an even square matrix")
    if any(rows[i][j] != -rows[j][i] for i in range(n) for j in range(n)):
        raise ShapeError("Pfaffian of a non-skew-symmetric matrix")
    return _generic_pf([list(r) for r in rows], 0)


def jacobian(ps: Sequence[Polynomial], names: Sequence[str]) -> PolyMatrix:
    if not ps:
        raise ShapeError("empty polynomial list")
    vt = ps[0].vt
    return PolyMatrix(vt, [[p.diff(n) for n in names] for p in ps])


def rank_values(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank over Q; rows are scaled to integers and eliminated fraction-free."""
    mat = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = 1
        for x in fr:
            den = den * x.denominator // _gcd(den, x.denominator)
        mat.append([int(x * den) for x in fr])
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][c]
        for i in range(rank + 1, len(mat)):
            f = mat[i][c]
            mat[i] = [(p * mat[i][j] - f * mat[rank][j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == len(mat):
            break
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank_at(m: PolyMatrix, point: Mapping[str, Scalar]) -> int:
    return rank_values(m.evaluate(point))


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}`` over Q via reduced row echelon form."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        basis.append(v)
    return basis


def coefficient_rows(polys: Sequence[Polynomial]) -> tuple[list[int], list[list[Scalar]]]:
    """Coefficient vectors of ``polys`` over the union of their monomials."""
    monos = sorted({m for p in polys for m in p.terms}, reverse=True)
    pos = {m: i for i, m in enumerate(monos)}
    rows = []
    for p in polys:
        row = [0] * len(monos)
        for m, c in p.terms.items():
            row[pos[m]] = c
        rows.append(row)
    return monos, rows


def span_rank(polys: Sequence[Polynomial]) -> int:
    if not polys:
        return 0
    return rank_values(coefficient_rows(polys)[1])


def same_span(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    """True when the Q-linear spans of the two lists coincide."""
    ra, rb, rab = span_rank(a), span_rank(b), span_rank(list(a) + list(b))
    return ra == rb == rab


def in_span(p: Polynomial, basis: Sequence[Polynomial]) -> bool:
    return span_rank(list(basis) + [p]) == span_rank(basis)


def span_intersection(spans: Sequence[Sequence[Polynomial]]) -> list[Polynomial]:
    """A basis of the intersection of the Q-linear spans of each list."""
    if not spans:
        raise ShapeError("no spans to intersect")
    current = list(spans[0])
    for other in spans[1:]:
        if not current or not other:
            return []
        # solve sum x_i a_i = sum y_j b_j, then read off sum x_i a_i
        monos, rows = coefficient_rows(list(current) + list(other))
        na = len(current)
        system = [[rows[i][k] if i < na else -rows[i][k] for i in range(len(rows))]
                  for k in range(len(monos))]
        vt = current[0].vt
        out = []
        for sol in nullspace(system, len(rows)):
            acc = vt.zero()
            for x, p in zip(sol[:na], current):
                if x:
                    acc = acc + p * x
            if acc:
                out.append(acc)
        current = out
    return current


# ---------------------------------------------------------------------------
# text parsing (inverse of Polynomial.to_text, plus parentheses)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, vt: VarTable, text: str):
        self.vt = vt
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if not mt:
                break
            pos = mt.end()
            if mt.group(1):
                self.toks.append(("num", int(mt.group(1))))
            elif mt.group(2):
                self.toks.append(("name", mt.group(2)))
            elif mt.group(3):
                self.toks.append(("op", mt.group(3)))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.power()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise ValueError("can only divide by a nonzero constant")
                acc = acc / f.constant_value()
        return acc

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be a literal integer")
            return base ** val
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.vt.const(val)
        if kind == "name":
            return self.vt.var(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing closing parenthesis")
            return p
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")
