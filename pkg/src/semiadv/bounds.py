"""Combinatorial checks: Hamming balls around received words and the
generalized semi-adversarial Singleton bound witness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import codes
from .channel import ChannelSpec, apply_semi_adversarial, make_rng
from .codes import CodeSpec, Message, Word
from .errors import BudgetExceeded, InvalidParameters, PreconditionViolated
from .poly import Polynomial, lagrange

I64 = np.int64
ENUM_BUDGET = 1_000_000
CHUNK = 1 << 14


def generator_rows(spec: CodeSpec) -> np.ndarray:
    """Codewords of the unit messages, flattened to (K, n*s); all families are linear."""
    G = spec._cache.get("generator_rows")
    if G is None:
        F = spec.field
        rows = []
        for h in range(spec.n_polys):
            for t in range(spec.k):
                polys = [Polynomial.zero(F)] * spec.n_polys
                polys[h] = Polynomial.monomial(F, t)
                rows.append(codes.encode(spec, Message(polys)).symbols.reshape(-1))
        G = np.array(rows, dtype=I64)
        spec._cache["generator_rows"] = G
    return G


def _message_from_coeffs(spec, coeffs):
    F = spec.field
    k = spec.k
    return Message([Polynomial(F, coeffs[h * k:(h + 1) * k]) for h in range(spec.n_polys)])


def _ball_exhaustive(spec: CodeSpec, center: Word, radius: int):
    F = spec.field
    q = F.order
    K = spec.k * spec.n_polys
    total = q ** K
    if total > ENUM_BUDGET:
        raise BudgetExceeded(f"q^(sk) = {q}^{K} exceeds the enumeration budget")
    G = generator_rows(spec)
    y = center.symbols.reshape(-1)
    n, s = spec.n, spec.s
    found = []
    pw = q ** np.arange(K, dtype=I64)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=I64)
        digits = (idx[:, None] // pw[None, :]) % q
        if F.is_prime:
            cw = (digits @ G) % F.p if q < (1 << 20) else _combine_generic(F, digits, G)
        else:
            cw = _combine_generic(F, digits, G)
        diff = np.any((cw != y[None, :]).reshape(-1, n, s), axis=2).sum(axis=1)
        for i in np.flatnonzero(diff <= radius):
            found.append(_message_from_coeffs(spec, digits[i]))
    return found


def _combine_generic(F, digits, G):
    acc = np.zeros((digits.shape[0], G.shape[1]), dtype=I64)
    for t in range(G.shape[0]):
        acc = F.add(acc, F.mul(digits[:, t, None], G[t][None, :]))
    return acc


def _ball_ksubsets(spec: CodeSpec, center: Word, radius: int):
    """Any codeword within the radius agrees with the center on some k positions
    (as n - radius >= k), so interpolating every k-subset finds them all."""
    F = spec.field
    n, k = spec.n, spec.k
    Y = center.symbols
    seen = {}
    for sub in itertools.combinations(range(n), k):
        sub = np.array(sub)
        polys = [Polynomial._wrap(F, lagrange(F, spec.alphas[sub], Y[sub, h])) for h in range(spec.s)]
        msg = Message(polys)
        if msg in seen:
            continue
        seen[msg] = codes.distance(center, codes.encode(spec, msg)) <= radius
    return [m for m, ok in seen.items() if ok]


def ball_intersect(spec: CodeSpec, center: Word, radius: int, method="auto"):
    """Messages whose codewords lie within Hamming distance ``radius`` of center."""
    codes.check_word(spec, center)
    radius = int(radius)
    if radius < 0:
        return []
    if method == "auto":
        K = spec.k * spec.n_polys
        small = spec.q ** K <= ENUM_BUDGET
        method = "exhaustive" if small else "ksubset"
    if method == "exhaustive":
        return _ball_exhaustive(spec, center, radius)
    if method == "ksubset":
        if spec.family not in ("RS", "IRS"):
            raise InvalidParameters("the k-subset method covers RS and IRS only")
        if spec.n - radius < spec.k:
            raise InvalidParameters("k-subset method needs n - radius >= k")
        from math import comb

        if comb(spec.n, spec.k) > ENUM_BUDGET:
            raise BudgetExceeded("too many k-subsets")
        return _ball_ksubsets(spec, center, radius)
    raise InvalidParameters(f"unknown method {method!r}")


# --- semi-adversarial uniqueness ------------------------------------------------


def check_semi_adv_unique(spec: CodeSpec, e0, e, trials, seed=0, adversary="randomReplace",
                          method="auto", L=1):
    """Fraction of sampled transmissions whose e-ball holds only the sent codeword.

    With adversary="gssb" the sender transmits the witness codeword c_0, the
    adversary writes the witness word z and the random errors land on K.
    """
    if adversary == "gssb":
        wit = gssb_witness(spec, e0, e, L, seed)
    unique = 0
    for t in range(trials):
        rng = make_rng(seed, t)
        if adversary == "gssb":
            sent = wit.witnesses[0]
            a = wit.z.symbols.copy()
            a[list(wit.K)] = spec.field.random(rng, (len(wit.K), spec.s))
            y = Word(spec.field, a)
        else:
            sent = codes.random_message(spec, rng)
            y, _ = apply_semi_adversarial(codes.encode(spec, sent),
                                          ChannelSpec(e0, e, adversary, {}, seed), rng)
        ball = ball_intersect(spec, y, e, method)
        unique += len(ball) == 1 and ball[0] == sent
    return unique / trials if trials else 1.0


# --- GSSB witness -----------------------------------------------------------------


@dataclass(frozen=True)
class GSSBWitness:
    z: Word
    K: tuple
    witnesses: tuple  # Messages; c_0 first
    codewords: tuple  # Words
    blocks: tuple  # B_0, B_1, ..., B_L as tuples of 0-based positions
    e0: int
    e: int
    k: int

    def verify(self) -> bool:
        """distance(z, c_0) <= e0 and every y that differs from z only on K
        has all L+1 codewords within distance e."""
        n = self.z.n
        if codes.distance(self.z, self.codewords[0]) > self.e0:
            return False
        off = np.ones(n, dtype=bool)
        off[list(self.K)] = False
        for c in self.codewords:
            worst = int(np.any(self.z.symbols[off] != c.symbols[off], axis=1).sum()) + len(self.K)
            if worst > self.e:
                return False
        return True

    def agreement_inequalities(self):
        """k - 1 + |B_i| >= n - e for i = 1..L."""
        n = self.z.n
        return [self.k - 1 + len(b) >= n - self.e for b in self.blocks[1:]]


def gssb_witness(spec: CodeSpec, e0, e, L, seed=0) -> GSSBWitness:
    if spec.family != "RS":
        raise InvalidParameters("the witness construction is implemented for RS codes")
    n, k = spec.n, spec.k
    e0, e, L = int(e0), int(e), int(L)
    F = spec.field
    if L < 1 or not 0 <= e0 <= e <= n:
        raise PreconditionViolated(f"need L >= 1 and 0 <= e0 <= e <= n, got {(e0, e, L)}")
    if L + 1 > F.order:
        raise PreconditionViolated(f"need L + 1 <= q, got L={L}, q={F.order}")
    if not e0 // L > n - k - e:
        raise PreconditionViolated(f"need floor(e0/L) > n-k-e, got {e0 // L} <= {n - k - e}")
    rng = make_rng(seed)
    prefix = F.random(rng, k - 1)
    msgs, words = [], []
    for j in range(L + 1):
        vals = np.concatenate([prefix, [j]]).astype(I64)
        f = Polynomial._wrap(F, lagrange(F, spec.alphas[:k], F.asarray(vals)))
        msg = Message([f])
        msgs.append(msg)
        words.append(codes.encode(spec, msg))
    m = n - (k - 1) - (e - e0)
    size = m // (L + 1)
    start = k - 1  # 0-based index of position k
    blocks = [tuple(range(start + (j - 1) * size, start + j * size)) for j in range(1, L + 1)]
    b0 = tuple(range(start + L * size, start + m))
    z = words[0].symbols.copy()
    for j, b in enumerate(blocks, start=1):
        z[list(b)] = words[j].symbols[list(b)]
    K = tuple(range(n - (e - e0), n))
    return GSSBWitness(Word(F, z), K, tuple(msgs), tuple(words), (b0, *blocks), e0, e, k)


def sample_witness_balls(spec: CodeSpec, wit: GSSBWitness, samples=10, seed=0, method="auto"):
    """Ball sizes around random words that agree with z off K."""
    sizes = []
    for t in range(samples):
        rng = make_rng(seed, t)
        a = wit.z.symbols.copy()
        a[list(wit.K)] = spec.field.random(rng, (len(wit.K), spec.s))
        ball = ball_intersect(spec, Word(spec.field, a), wit.e, method)
        got = set(ball)
        sizes.append((len(ball), all(m in got for m in wit.witnesses)))
    return sizes
