"""Dirichlet characters mod q, Gauss and Ramanujan sums, mu and phi.

The unit group (Z/qZ)* is decomposed by CRT into cyclic pieces: one primitive
root per odd prime power, and the pair {-1, 5} for 2^k with k >= 3.  A
character is an exponent tuple against those generators; its values are kept
as exact fractions of a full turn and converted to floating complex only at
the last step of each formula, which is what lets the Gauss-sum identities
verify to near machine precision.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import cos, gcd, isqrt, lcm, pi, sin

import numpy as np

from .sieve import primes_upto


def factorize_small(n: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization for the small moduli used here."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    m = n
    for p in primes_upto(isqrt(n)).tolist():
        if p * p > m:
            break
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out.append((p, a))
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def mobius(n: int) -> int:
    """Mobius function: (-1)^k on squarefree n with k prime factors, else 0."""
    f = factorize_small(n)
    if any(a > 1 for _, a in f):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n: int) -> int:
    phi = 1
    for p, a in factorize_small(n):
        phi *= (p - 1) * p ** (a - 1)
    return phi


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, a in factorize_small(n):
        divs = [d * p**e for d in divs for e in range(a + 1)]
    return sorted(divs)


def turn_phase(t: Fraction) -> complex:
    """e^{2 pi i t} for an exact fraction t of a full turn."""
    t -= int(t)
    if t < 0:
        t += 1
    if t == 0:
        return 1.0 + 0.0j
    if 2 * t == 1:
        return -1.0 + 0.0j
    x = 2.0 * pi * float(t)
    return complex(cos(x), sin(x))


def unit_roots(q: int) -> np.ndarray:
    """Table of e^{2 pi i r / q}, r = 0..q-1, with exact conjugate symmetry.

    Entries for r > q/2 are constructed as conjugates of the mirrored entries,
    so sums assembled from this table satisfy S(q - h) == conj(S(h)) exactly.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    roots = np.empty(q, dtype=np.complex128)
    roots[0] = 1.0
    for r in range(1, q // 2 + 1):
        if 2 * r == q:
            roots[r] = -1.0
        else:
            x = 2.0 * pi * r / q
            roots[r] = complex(cos(x), sin(x))
    for r in range(q // 2 + 1, q):
        roots[r] = roots[q - r].conjugate()
    roots.setflags(write=False)
    return roots


@dataclass(frozen=True)
class UnitGroupStructure:
    """CRT generators of (Z/qZ)* and the discrete logarithm of every unit."""

    q: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    dlog: dict[int, tuple[int, ...]]


def _primitive_root_mod_prime(p: int) -> int:
    # brute force from 2 upward; q is small and fixed so speed is irrelevant
    factors = [f for f, _ in factorize_small(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")  # unreachable for prime p


def _local_generators(p: int, e: int) -> list[tuple[int, int]]:
    """Generators with orders of (Z/p^e Z)* as (generator, order) pairs."""
    pe = p**e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(pe - 1, 2), (5, 2 ** (e - 2))]
    g = _primitive_root_mod_prime(p)
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p  # g was not primitive mod p^2; g + p always is
    return [(g, (p - 1) * p ** (e - 1))]


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroupStructure:
    """Structure of (Z/qZ)* with generators lifted to residues mod q."""
    if q <= 1:
        raise ValueError("q must be > 1")
    gens: list[int] = []
    orders: list[int] = []
    for p, e in factorize_small(q):
        pe = p**e
        rest = q // pe
        for g_local, order in _local_generators(p, e):
            # CRT lift: congruent to g_local mod p^e and to 1 mod q/p^e
            if rest == 1:
                g = g_local % q
            else:
                inv = pow(pe, -1, rest)
                g = (g_local + pe * ((1 - g_local) * inv % rest)) % q
            gens.append(g)
            orders.append(order)
    dlog: dict[int, tuple[int, ...]] = {}
    for exps in product(*[range(o) for o in orders]):
        a = 1
        for g, k in zip(gens, exps):
            a = a * pow(g, k, q) % q
        dlog[a] = exps
    assert len(dlog) == euler_phi(q)
    return UnitGroupStructure(q=q, generators=tuple(gens), orders=tuple(orders), dlog=dlog)


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod q selected by its exponent tuple against the generators.

    chi(n) = e^{2 pi i * sum_j index_j * dlog_j(n) / order_j} on units,
    0 off units.  turn() exposes the exact angle as a Fraction.
    """

    q: int
    index: tuple[int, ...]
    group: UnitGroupStructure = field(repr=False, compare=False)

    def turn(self, n: int) -> Fraction | None:
        """Exact phase of chi(n) as a fraction of a turn; None when chi(n)=0."""
        exps = self.group.dlog.get(n % self.q)
        if exps is None:
            return None
        t = Fraction(0)
        for idx, e, o in zip(self.index, exps, self.group.orders):
            t += Fraction(idx * e, o)
        return t % 1

    def __call__(self, n: int) -> complex:
        t = self.turn(n)
        return 0j if t is None else turn_phase(t)

    @property
    def is_principal(self) -> bool:
        return all(i == 0 for i in self.index)

    def conjugate(self) -> "DirichletCharacter":
        conj = tuple((-i) % o for i, o in zip(self.index, self.group.orders))
        return DirichletCharacter(q=self.q, index=conj, group=self.group)

    @property
    def order(self) -> int:
        return lcm(1, *(o // gcd(i, o) for i, o in zip(self.index, self.group.orders)))

    @property
    def parity(self) -> int:
        """chi(-1), either +1 or -1."""
        t = self.turn(self.q - 1)
        return 1 if t == 0 else -1


@dataclass(frozen=True)
class CharacterGroup:
    q: int
    characters: tuple[DirichletCharacter, ...]
    principal: DirichletCharacter

    def __iter__(self):
        return iter(self.characters)

    def __len__(self) -> int:
        return len(self.characters)

    def nonprincipal(self) -> tuple[DirichletCharacter, ...]:
        return tuple(c for c in self.characters if not c.is_principal)


@lru_cache(maxsize=None)
def character_group(q: int) -> CharacterGroup:
    """All phi(q) Dirichlet characters mod q, principal character flagged.

    Moduli q <= 2 are rejected: the only character mod 1 or 2 is principal
    and the parity identity machinery handles that case separately.
    """
    if q <= 2:
        raise ValueError("character enumeration needs q > 2")
    group = unit_group(q)
    chars = tuple(
        DirichletCharacter(q=q, index=idx, group=group)
        for idx in product(*[range(o) for o in group.orders])
    )
    principal = chars[0]
    assert principal.is_principal
    return CharacterGroup(q=q, characters=chars, principal=principal)


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{l mod q} chi(l) e^{2 pi i l / q} by direct summation.

    Angles are accumulated exactly (fractions of a turn) and converted to
    floating complex once per distinct angle.
    """
    q = chi.q
    angles: Counter[Fraction] = Counter()
    for l in range(1, q + 1):
        t = chi.turn(l)
        if t is None:
            continue
        angles[(t + Fraction(l, q)) % 1] += 1
    return sum((cnt * turn_phase(t) for t, cnt in sorted(angles.items())), 0j)


def ramanujan_sum(q: int, h: int) -> int:
    """sum over l <= q coprime to q of e^{2 pi i l h / q}, as an exact integer.

    Evaluated through the divisor formula sum_{d | (q, h)} mu(q/d) d.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    g = q if h % q == 0 else gcd(q, h % q)
    return sum(mobius(q // d) * d for d in divisors(g))


def phase_from_gauss_sums(h: int, q: int) -> complex:
    """Reconstruct e^{2 pi i h / q} from Gauss sums of the non-principal characters.

    Returns (1/phi(q)) sum_{chi != chi0} tau(chi) conj(chi(h)) + mu(q)/phi(q),
    which equals e^{2 pi i h / q} whenever gcd(h, q) = 1 and q > 2.  The terms
    are accumulated as exact angles and converted to complex once.
    """
    if gcd(h, q) != 1:
        raise ValueError("h must be coprime to q")
    grp = character_group(q)
    phi = len(grp)
    angles: Counter[Fraction] = Counter()
    for chi in grp.nonprincipal():
        th = chi.turn(h)
        for l in range(1, q + 1):
            tl = chi.turn(l)
            if tl is None:
                continue
            angles[(tl + Fraction(l, q) - th) % 1] += 1
    total = sum((cnt * turn_phase(t) for t, cnt in sorted(angles.items())), 0j)
    return total / phi + mobius(q) / phi
