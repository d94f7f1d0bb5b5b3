"""Weyl group elements with canonical reduced words, Bruhat order, inversions.

Elements carry the exact integer matrix of their action on Y-coordinates
(the identity of record: the representation is faithful because the simple
coroots are independent) together with the inverse matrix; the canonical
ShortLex reduced word is recovered from the matrices by greedy left descents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import IncompatibleData, NotARealCoroot
from .rootdata import Coroot, IntVec, RootGeneratingSystem, coroot_orbit_witness

Mat = tuple[IntVec, ...]


def _identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _mat_mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(ra[k] * cb[k] for k in range(n)) for cb in bt) for ra in a)


def _mat_vec(a: Mat, v) -> IntVec:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Group element as a pair of mutually inverse integer matrices on Y.

    Elements are interned per group, so equal elements are normally the same
    object and per-element caches (word, descents) are computed once.
    """

    system: RootGeneratingSystem
    mat: Mat
    inv: Mat

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.mat == other.mat and self.system == other.system

    @cached_property
    def _hash(self) -> int:
        return hash(self.mat)

    def __hash__(self):
        return self._hash

    @cached_property
    def group(self) -> "WeylGroup":
        return WeylGroup(self.system)

    @cached_property
    def word(self) -> tuple[int, ...]:
        """Canonical ShortLex-minimal reduced word (greedy smallest left descent)."""
        group = self.group
        word: list[int] = []
        u_inv = self.inv  # matrix of the running inverse
        ident = group._ident_mat
        while u_inv != ident:
            i = _smallest_negative_column(group, u_inv)
            word.append(i)
            u_inv = _mat_mul(u_inv, group._simple_mats[i])
        return tuple(word)

    @property
    def length(self) -> int:
        return len(self.word)

    @cached_property
    def is_identity(self) -> bool:
        return self.inv == self.group._ident_mat

    @cached_property
    def right_descents(self) -> frozenset[int]:
        """Indices i with l(w s_i) < l(w), i.e. w . alpha_i^vee negative."""
        return self.group._negative_coroot_images(self.mat)

    @cached_property
    def left_descents(self) -> frozenset[int]:
        return self.group._negative_coroot_images(self.inv)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.system != other.system:
            raise IncompatibleData("elements of different Weyl groups")
        return self.group.intern(_mat_mul(self.mat, other.mat), _mat_mul(other.inv, self.inv))

    def inverse(self) -> "WeylElement":
        return self.group.intern(self.inv, self.mat)

    def apply(self, v) -> IntVec:
        """Action on a Y-coordinate vector."""
        return _mat_vec(self.mat, v)

    def apply_coroot(self, coroot: Coroot) -> Coroot:
        y = self.apply(self.system.coroot_to_y(coroot.coords))
        coords = self.system.y_to_coroot(y)
        if coords is None:
            raise NotARealCoroot(f"image of {coroot} left the coroot lattice")
        return Coroot(coords)

    @property
    def sort_key(self):
        return (len(self.word), self.word)

    def __repr__(self):
        if not self.word:
            return "e"
        return "*".join(f"s{i + 1}" for i in self.word)


def _smallest_negative_column(group: "WeylGroup", u_inv: Mat) -> int:
    for i in range(group.system.n):
        coords = group._coroot_image(u_inv, i)
        if coords is not None and all(c <= 0 for c in coords):
            return i
    raise AssertionError("non-identity element with no left descent")


class WeylGroup:
    """Element factory, interning table, and caches for one root datum."""

    _instances: dict[RootGeneratingSystem, "WeylGroup"] = {}

    def __new__(cls, system: RootGeneratingSystem):
        inst = cls._instances.get(system)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(system)
            cls._instances[system] = inst
        return inst

    def _init(self, system: RootGeneratingSystem) -> None:
        self.system = system
        r = system.rank
        self._ident_mat = _identity(r)
        mats = []
        for i in range(system.n):
            cols = [system.reflect(i, tuple(int(j == k) for k in range(r))) for j in range(r)]
            # cols[j] is the image of basis vector e_j; store as row-major matrix
            mats.append(tuple(tuple(cols[j][a] for j in range(r)) for a in range(r)))
        self._simple_mats = mats
        self._coroot_ys = [system.coroot_to_y(system.simple_coroot(i).coords) for i in range(system.n)]
        self._elements: dict[Mat, WeylElement] = {}
        self.identity = self.intern(self._ident_mat, self._ident_mat)
        self._simples = tuple(self.intern(m, m) for m in mats)

    def intern(self, mat: Mat, inv: Mat) -> WeylElement:
        el = self._elements.get(mat)
        if el is None:
            el = WeylElement(self.system, mat, inv)
            self._elements[mat] = el
        return el

    def _coroot_image(self, mat: Mat, i: int) -> IntVec | None:
        return self.system.y_to_coroot(_mat_vec(mat, self._coroot_ys[i]))

    def _negative_coroot_images(self, mat: Mat) -> frozenset[int]:
        out = []
        for i in range(self.system.n):
            coords = self._coroot_image(mat, i)
            if coords is not None and all(c <= 0 for c in coords):
                out.append(i)
        return frozenset(out)

    def simple(self, i: int) -> WeylElement:
        return self._simples[i]

    def from_word(self, word) -> WeylElement:
        out = self.identity
        for i in word:
            out = out * self._simples[i]
        return out

    def element(self, mat: Mat, inv: Mat) -> WeylElement:
        return self.intern(mat, inv)


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v


def length(w: WeylElement) -> int:
    return w.length


def has_right_descent(w: WeylElement, i: int) -> bool:
    """l(w s_i) < l(w), i.e. w . alpha_i^vee is negative."""
    return i in w.right_descents


def has_left_descent(w: WeylElement, i: int) -> bool:
    return i in w.left_descents


def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    """Subword criterion via the lifting property along the canonical word of w.

    >>> # identity is below everything; see tests for worked instances
    """
    if v.system != w.system:
        raise IncompatibleData("elements of different Weyl groups")
    if v.length > w.length:
        return False
    group = WeylGroup(v.system)
    cur = v
    for i in w.word:
        if cur.is_identity:
            return True
        if has_left_descent(cur, i):
            cur = group.simple(i) * cur
    return cur.is_identity


def inversion_coroots(w: WeylElement) -> tuple[Coroot, ...]:
    """N(w) = set of positive coroots sent negative by w; |N(w)| = l(w)."""
    sys = w.system
    group = WeylGroup(sys)
    word = w.word
    out = []
    suffix = group.identity
    for j in range(len(word) - 1, -1, -1):
        out.append(suffix.apply_coroot(sys.simple_coroot(word[j])))
        suffix = suffix * group.simple(word[j])
    return tuple(sorted(out, key=lambda c: c.sort_key))


def reflection_from_coroot(sys: RootGeneratingSystem, coroot: Coroot) -> WeylElement:
    """The reflection r_{alpha^vee} attached to a positive real coroot."""
    if not coroot.positive:
        raise NotARealCoroot(f"{coroot} is not positive")
    word, i = coroot_orbit_witness(sys, coroot)
    group = WeylGroup(sys)
    w = group.from_word(word)
    return w * group.simple(i) * w.inverse()


def coroot_of_reflection(r: WeylElement) -> Coroot:
    """Positive coroot of a reflection: the unique inversion sent to its negative."""
    for c in inversion_coroots(r):
        if r.apply_coroot(c) == -c:
            return c
    raise NotARealCoroot(f"{r!r} is not a reflection")


def orbit_simple_index(sys: RootGeneratingSystem, coroot: Coroot) -> int:
    """Index i with coroot in the Weyl orbit of alpha_i^vee."""
    return coroot_orbit_witness(sys, coroot.abs())[1]


def enumerate_ball(sys: RootGeneratingSystem, max_length: int) -> tuple[WeylElement, ...]:
    """All elements of length <= max_length, in (length, ShortLex word) order."""
    group = WeylGroup(sys)
    levels = [[group.identity]]
    seen = {group.identity}
    for _ in range(max_length):
        nxt = []
        for w in levels[-1]:
            for i in range(sys.n):
                if not has_right_descent(w, i):
                    cand = w * group.simple(i)
                    if cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
        if not nxt:
            break
        levels.append(nxt)
    out = [w for level in levels for w in level]
    return tuple(sorted(out, key=lambda w: w.sort_key))


def all_reduced_words(w: WeylElement) -> list[tuple[int, ...]]:
    """Every reduced word of w, by exhaustive left-descent recursion."""
    group = WeylGroup(w.system)
    if w.is_identity:
        return [()]
    out = []
    for i in range(w.system.n):
        if has_left_descent(w, i):
            for rest in all_reduced_words(group.simple(i) * w):
                out.append((i,) + rest)
    return out


def bruhat_lower_closure(elements) -> frozenset[WeylElement]:
    """Close a finite set of elements downward under the Bruhat order."""
    closed: set[WeylElement] = set()
    stack = list(elements)
    while stack:
        w = stack.pop()
        if w in closed:
            continue
        closed.add(w)
        group = WeylGroup(w.system)
        word = w.word
        for drop in range(len(word)):
            sub = group.from_word(word[:drop] + word[drop + 1:])
            if sub not in closed:
                stack.append(sub)
    return frozenset(closed)
