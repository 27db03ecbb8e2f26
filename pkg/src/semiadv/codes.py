"""Code families (RS, IRS, FRS, MULT): parameters, encoders, words.

Words are (n, s) arrays of element encodings, one row per symbol.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (FieldMismatch, InvalidParameters, ParseError, ShapeMismatch)
from .field import Field, element_order, find_generator, make_field, psi_embed, psi_inverse
from .poly import Polynomial, SubproductTree, hasse, horner, norm
from .settings import settings

I64 = np.int64
FAMILIES = ("RS", "IRS", "FRS", "MULT")


def geometric(F: Field, ratio, count, start=1):
    """[start, start*r, start*r^2, ...] of the given length."""
    out = np.empty(count, dtype=I64)
    if count == 0:
        return out
    out[0] = F.reduce_scalar(start)
    filled, step = 1, F.reduce_scalar(ratio)
    while filled < count:
        take = min(filled, count - filled)
        out[filled:filled + take] = F.mul(out[:take], step)
        filled += take
        step = int(F.mul(step, step))
    return out


@dataclass(frozen=True, eq=False)
class CodeSpec:
    family: str
    n: int
    k: int
    field: Field
    s: int = 1
    gamma: int | None = None
    alphas: np.ndarray = None
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def q(self):
        return self.field.order

    @property
    def rate(self):
        return self.k / self.n

    def __eq__(self, other):
        return (isinstance(other, CodeSpec) and self.family == other.family
                and (self.n, self.k, self.s, self.gamma) == (other.n, other.k, other.s, other.gamma)
                and self.field == other.field and np.array_equal(self.alphas, other.alphas))

    def __hash__(self):
        return hash((self.family, self.n, self.k, self.s, self.gamma, self.field))

    @property
    def n_polys(self):
        return self.s if self.family == "IRS" else 1

    def eval_points(self):
        """Flat list of all locations a message polynomial is evaluated at."""
        if self.family == "FRS":
            pts = self._cache.get("frs_points")
            if pts is None:
                F = self.field
                pts = np.empty((self.n, self.s), dtype=I64)
                pts[:, 0] = self.alphas
                for j in range(1, self.s):
                    pts[:, j] = F.mul(pts[:, j - 1], self.gamma)
                pts.flags.writeable = False
                self._cache["frs_points"] = pts
            return pts.reshape(-1)
        return self.alphas

    def tree(self):
        t = self._cache.get("tree")
        if t is None:
            t = SubproductTree(self.field, self.eval_points())
            self._cache["tree"] = t
        return t

    def evaluate(self, f):
        """f at eval_points(), through the cached subproduct tree when fast."""
        pts = self.eval_points()
        if not settings.fast or len(pts) < settings.horner_threshold:
            return horner(self.field, norm(f), pts)
        return self.tree().evaluate(f)

    def to_dict(self):
        d = {"family": self.family, "n": self.n, "k": self.k, "s": self.s,
             "field": self.field.to_dict()}
        if self.gamma is not None:
            d["gamma"] = int(self.gamma)
        if not np.array_equal(self.alphas, default_alphas(self.family, self.n, self.field, self.s,
                                                           self.gamma)):
            d["alphas"] = [int(a) for a in self.alphas]
        return d


def default_alphas(family, n, F: Field, s=1, gamma=None):
    if family == "FRS":
        if s * n > F.order - 1:
            raise InvalidParameters(f"FRS needs s*n <= q-1, got {s}*{n} > {F.order - 1}")
        g = find_generator(F).value if gamma is None else gamma
        return geometric(F, F.pow(g, s), n)
    if n > F.order - 1:
        raise InvalidParameters(f"need n <= q-1 nonzero points, got n={n}, q={F.order}")
    g = find_generator(F).value
    return geometric(F, g, n, start=g)


def make_code_spec(family, n, k, field: Field, s=1, gamma=None, alphas=None) -> CodeSpec:
    """Validated code parameters.  Raises InvalidParameters naming the rule broken."""
    family = str(family).upper()
    if family not in FAMILIES:
        raise InvalidParameters(f"unknown family {family!r}")
    n, k, s = int(n), int(k), int(s)
    F = field
    if n < 1 or not 1 <= k <= n:
        raise InvalidParameters(f"need 1 <= k <= n, got n={n}, k={k}")
    if s < 1:
        raise InvalidParameters("s must be >= 1")
    if family == "RS" and s != 1:
        raise InvalidParameters("RS has s = 1")
    if family == "MULT" and F.characteristic <= s:
        raise InvalidParameters(f"MULT needs char > s, got char {F.characteristic}, s={s}")
    if family == "FRS":
        gamma = find_generator(F).value if gamma is None else F.reduce_scalar(gamma)
        if element_order(F, gamma) != F.order - 1:
            raise InvalidParameters("FRS gamma must be a multiplicative generator")
    elif gamma is not None:
        raise InvalidParameters("gamma is an FRS parameter")
    if alphas is None:
        alphas = default_alphas(family, n, F, s, gamma)
    else:
        alphas = F.asarray(alphas).reshape(-1).copy()
    if len(alphas) != n:
        raise InvalidParameters(f"expected {n} evaluation points, got {len(alphas)}")
    if len(np.unique(alphas)) != n:
        raise InvalidParameters("evaluation points are not pairwise distinct")
    if family in ("IRS", "MULT") and np.any(alphas == 0):
        raise InvalidParameters(f"{family} evaluation points must be nonzero")
    alphas.flags.writeable = False
    spec = CodeSpec(family, n, k, F, s, gamma, alphas)
    if family == "FRS":
        pts = spec.eval_points()
        if len(np.unique(pts)) != len(pts):
            raise InvalidParameters("FRS points are not appropriate: the s*n values collide")
    return spec


def spec_from_dict(d) -> CodeSpec:
    from .field import field_from_dict

    F = field_from_dict(d["field"])
    return make_code_spec(d["family"], d["n"], d["k"], F, d.get("s", 1), d.get("gamma"),
                          d.get("alphas"))


# --- messages and words -----------------------------------------------------


@dataclass(frozen=True)
class Message:
    polys: tuple

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))

    @property
    def field(self):
        return self.polys[0].field

    def __eq__(self, other):
        return isinstance(other, Message) and self.polys == other.polys

    def __hash__(self):
        return hash(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]


def make_message(spec: CodeSpec, polys) -> Message:
    F = spec.field
    out = []
    for f in polys:
        if not isinstance(f, Polynomial):
            f = Polynomial(F, f)
        F.check(f.field)
        out.append(f)
    if len(out) != spec.n_polys:
        raise ShapeMismatch(f"{spec.family} message has {spec.n_polys} polynomials, got {len(out)}")
    for f in out:
        if f.degree >= spec.k:
            raise ShapeMismatch(f"message degree {f.degree} >= k={spec.k}")
    return Message(out)


def random_message(spec: CodeSpec, rng) -> Message:
    F = spec.field
    return Message([Polynomial(F, F.random(rng, spec.k)) for _ in range(spec.n_polys)])


@dataclass(frozen=True, eq=False)
class Word:
    field: Field
    symbols: np.ndarray

    def __post_init__(self):
        a = np.array(self.symbols, dtype=I64)
        if a.ndim == 1:
            a = a[:, None]
        if a.ndim != 2:
            raise ShapeMismatch("word must be an (n, s) array")
        a.flags.writeable = False
        object.__setattr__(self, "symbols", a)

    @property
    def n(self):
        return self.symbols.shape[0]

    @property
    def s(self):
        return self.symbols.shape[1]

    def __eq__(self, other):
        return (isinstance(other, Word) and self.field == other.field
                and np.array_equal(self.symbols, other.symbols))

    def __hash__(self):
        return hash((self.field, self.symbols.tobytes()))

    def replace(self, positions, tuples) -> "Word":
        a = self.symbols.copy()
        a[np.asarray(positions, dtype=I64)] = tuples
        return Word(self.field, a)


def check_word(spec: CodeSpec, w: Word):
    spec.field.check(w.field)
    if w.symbols.shape != (spec.n, spec.s):
        raise ShapeMismatch(f"word shape {w.symbols.shape} != {(spec.n, spec.s)}")


def encode(spec: CodeSpec, msg) -> Word:
    if not isinstance(msg, Message):
        msg = make_message(spec, msg)
    else:
        make_message(spec, msg.polys)
    F, n, s = spec.field, spec.n, spec.s
    fam = spec.family
    if fam in ("RS", "IRS"):
        cols = [spec.evaluate(f.coeffs) for f in msg.polys]
        return Word(F, np.stack(cols, axis=1))
    f = msg.polys[0].coeffs
    if fam == "FRS":
        return Word(F, spec.evaluate(f).reshape(n, s))
    cols = [spec.evaluate(hasse(F, f, i)) for i in range(s)]
    return Word(F, np.stack(cols, axis=1))


def distance(a: Word, b: Word) -> int:
    """Number of positions whose whole symbol tuples differ."""
    a.field.check(b.field)
    if a.symbols.shape != b.symbols.shape:
        raise ShapeMismatch(f"{a.symbols.shape} vs {b.symbols.shape}")
    return int(np.any(a.symbols != b.symbols, axis=1).sum())


# --- the IRS <-> subfield RS isomorphism ------------------------------------


def companion_extension(spec: CodeSpec) -> Field:
    """F_{q^s} built over the (prime) IRS field."""
    if spec.family != "IRS":
        raise InvalidParameters("IRS spec expected")
    if not spec.field.is_prime:
        raise FieldMismatch("the isomorphism is implemented over prime fields only")
    return make_field(spec.field.p, spec.s)


def subfield_rs_spec(spec: CodeSpec, E: Field | None = None) -> CodeSpec:
    """RS over F_{q^s} with the same (subfield) evaluation points."""
    E = companion_extension(spec) if E is None else E
    if E.p != spec.field.p or E.m != spec.s:
        raise FieldMismatch(f"{E!r} is not F_{{q^{spec.s}}}")
    return make_code_spec("RS", spec.n, spec.k, E, 1, None, E.embed(spec.alphas))


def irs_to_subfield_rs(spec: CodeSpec, w: Word, E: Field | None = None, gamma=None) -> Word:
    E = companion_extension(spec) if E is None else E
    check_word(spec, w)
    return Word(E, psi_embed(w.symbols, E, gamma)[:, None])


def subfield_rs_to_irs(spec: CodeSpec, w: Word, E: Field | None = None, gamma=None) -> Word:
    E = companion_extension(spec) if E is None else E
    E.check(w.field)
    if w.symbols.shape != (spec.n, 1):
        raise ShapeMismatch(f"expected ({spec.n}, 1), got {w.symbols.shape}")
    return Word(spec.field, psi_inverse(w.symbols[:, 0], E, gamma))


def combine_message(spec: CodeSpec, msg: Message, E: Field | None = None, gamma=None) -> Message:
    """f_1 + g f_2 + ... + g^{s-1} f_s as a single polynomial over F_{q^s}."""
    E = companion_extension(spec) if E is None else E
    C = np.zeros((spec.k, spec.s), dtype=I64)
    for h, f in enumerate(msg.polys):
        C[: len(f.coeffs), h] = f.coeffs
    return Message([Polynomial(E, psi_embed(C, E, gamma))])


def split_message(spec: CodeSpec, msg: Message, E: Field | None = None, gamma=None) -> Message:
    E = companion_extension(spec) if E is None else E
    c = np.zeros(spec.k, dtype=I64)
    c[: len(msg.polys[0].coeffs)] = msg.polys[0].coeffs
    D = psi_inverse(c, E, gamma)
    return Message([Polynomial(spec.field, D[:, h]) for h in range(spec.s)])


# --- text formats -------------------------------------------------------------


def _lines(source):
    if hasattr(source, "read"):
        return source.read().splitlines()
    return str(source).splitlines()


def _parse_rows(F: Field, text, path=None, width=None):
    rows = []
    for lineno, line in enumerate(_lines(text), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row, col = [], 1
        for part in line.split(","):
            try:
                row.append(F.parse_element(part))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col + len(part) - len(part.lstrip()), path) from None
            col += len(part) + 1
        if width is not None and len(row) != width:
            raise ParseError(f"expected {width} entries, found {len(row)}", lineno, 1, path)
        rows.append(row)
    return rows


def format_word(w: Word) -> str:
    F = w.field
    buf = io.StringIO()
    for row in w.symbols:
        buf.write(",".join(F.element_str(x) for x in row))
        buf.write("\n")
    return buf.getvalue()


def parse_word(spec: CodeSpec, text, path=None) -> Word:
    rows = _parse_rows(spec.field, text, path, width=spec.s)
    if len(rows) != spec.n:
        raise ParseError(f"expected {spec.n} symbols, found {len(rows)}", len(rows) + 1, 1, path)
    return Word(spec.field, np.array(rows, dtype=I64).reshape(spec.n, spec.s))


def format_message(msg: Message) -> str:
    """One line per polynomial, coefficients from degree 0 upwards."""
    F = msg.field
    return "".join(",".join(F.element_str(c) for c in f.coeffs) + "\n" if f.coeffs.size else "0\n"
                   for f in msg.polys)


def parse_message(spec: CodeSpec, text, path=None) -> Message:
    rows = _parse_rows(spec.field, text, path)
    if len(rows) != spec.n_polys:
        raise ParseError(f"expected {spec.n_polys} polynomial lines, found {len(rows)}",
                         len(rows) + 1, 1, path)
    try:
        return make_message(spec, [Polynomial(spec.field, r) for r in rows])
    except ShapeMismatch as exc:
        raise ParseError(str(exc), 1, 1, path) from None
