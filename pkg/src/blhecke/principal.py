"""The principal series module of a character: evaluation, weight spaces,
intertwining operators, the extended action of the tau-local algebra, and
the nilpotency-depth statistic.

Vectors are finite coefficient maps on Weyl group elements (coordinates with
respect to the T_w-translates of the cyclic vector).  All linear algebra is
exact and restricted to Bruhat lower sets, which the lattice-algebra action
preserves, so truncated computations are exact, not approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coxeter import WeylElement, bruhat_leq, bruhat_lower_closure
from .errors import (
    DecompositionFailure,
    DomainNotLowerSet,
    NotInBLH,
    NotInGenWeightSpace,
    NotInItgSpan,
    NotInKTau,
    NotInRTau,
    NotInUC,
    PoleAtCharacter,
)
from .hecke import HeckeAlgebra, HeckeElt, membership
from .laurent import Character, LaurentPoly, RationalElt, evaluate
from .linalg import SpanBasis, mat_pow, nullspace
from .scalars import ONE, Scalar, as_scalar, is_zero
from .scalars import inv as scalar_inv
from .stabilizer import TauStabilizer, u_c_check

NEG_INF = float("-inf")


class ModuleVector:
    """Finite scalar coefficient map w -> a_w over one character."""

    __slots__ = ("character", "coeffs")

    def __init__(self, character: Character, coeffs: dict[WeylElement, Scalar]):
        self.character = character
        self.coeffs = {w: as_scalar(c) for w, c in coeffs.items() if not is_zero(as_scalar(c))}

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        return sorted(self.coeffs.items(), key=lambda wc: wc[0].sort_key)

    def support(self) -> tuple[WeylElement, ...]:
        return tuple(sorted(self.coeffs, key=lambda w: w.sort_key))

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return ModuleVector(self.character, out)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(self.character, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, c: Scalar) -> "ModuleVector":
        return ModuleVector(self.character, {w: v * c for w, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.character == other.character and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*T[{w!r}]v" for w, c in self.items())


@dataclass(frozen=True)
class LowerSet:
    """Finite set of Weyl elements closed downward under the Bruhat order."""

    elements: frozenset[WeylElement]

    @staticmethod
    def closure(elements) -> "LowerSet":
        return LowerSet(bruhat_lower_closure(elements))

    @staticmethod
    def validated(elements) -> "LowerSet":
        elems = frozenset(elements)
        if bruhat_lower_closure(elems) != elems:
            raise DomainNotLowerSet("domain is not closed under the Bruhat order")
        return LowerSet(elems)

    def sorted(self) -> tuple[WeylElement, ...]:
        return tuple(sorted(self.elements, key=lambda w: w.sort_key))

    def __contains__(self, w: WeylElement) -> bool:
        return w in self.elements

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class PrincipalSeries:
    """The induced module of one character, with its exact toolkit."""

    algebra: HeckeAlgebra
    tau: Character

    def v(self) -> ModuleVector:
        return ModuleVector(self.tau, {self.algebra.group.identity: ONE})

    def vector(self, coeffs: dict[WeylElement, Scalar]) -> ModuleVector:
        return ModuleVector(self.tau, coeffs)

    # -- evaluation and the plain action ------------------------------------
    def ev(self, h: HeckeElt) -> ModuleVector:
        """Coefficient-wise evaluation at tau (pole raises with context)."""
        out: dict[WeylElement, Scalar] = {}
        for w, c in h.coeffs.items():
            try:
                out[w] = evaluate(self.tau, c)
            except PoleAtCharacter as exc:
                raise PoleAtCharacter(
                    f"coefficient of T[{w!r}] has a pole at tau: {exc}", factor=exc.factor, word=w.word
                ) from exc
        return ModuleVector(self.tau, out)

    def act(self, h: HeckeElt, x: ModuleVector) -> ModuleVector:
        """Module action of a polynomial-coefficient element."""
        if any(c.is_polynomial() is None for c in h.coeffs.values()):
            raise NotInBLH("action requires polynomial coefficients")
        lift = HeckeElt(
            self.algebra,
            {w: RationalElt.from_scalar(ONE, self.algebra.system.rank).scale(c) for w, c in x.coeffs.items()},
        )
        return self.ev(h * lift)

    def act_poly(self, p: LaurentPoly, x: ModuleVector) -> ModuleVector:
        return self.act(self.algebra.theta(RationalElt.from_poly(p)), x)

    # -- weight spaces ---------------------------------------------------------
    def _basis_generators(self) -> list[tuple]:
        rank = self.algebra.system.rank
        gens = []
        for j in range(rank):
            for sign in (1, -1):
                exp = [0] * rank
                exp[j] = sign
                gens.append(tuple(exp))
        return gens

    def _theta_matrix(self, exp: tuple, dom: tuple[WeylElement, ...]):
        """Columns of the Z^exp action on the span of a lower set."""
        key = (exp, dom)
        cache = _matrix_cache(self)
        if key not in cache:
            index = {w: k for k, w in enumerate(dom)}
            cols = []
            h = self.algebra.monomial(exp)
            for w in dom:
                image = self.act(h, ModuleVector(self.tau, {w: ONE}))
                col = [Fraction(0)] * len(dom)
                for v, c in image.coeffs.items():
                    if v not in index:
                        raise DomainNotLowerSet("action left the domain; not a lower set")
                    col[index[v]] = c
                cols.append(col)
            cache[key] = [[cols[j][i] for j in range(len(dom))] for i in range(len(dom))]
        return cache[key]

    def weight_space(self, eigen: Character, dom: LowerSet) -> list[ModuleVector]:
        """Exact basis of the eigen-character weight space supported in dom."""
        dom_sorted = dom.sorted()
        if not dom_sorted:
            return []
        n = len(dom_sorted)
        rows = []
        for exp in self._basis_generators():
            m = self._theta_matrix(exp, dom_sorted)
            lam = eigen.of_vector(exp)
            for i in range(n):
                row = list(m[i])
                row[i] = row[i] - lam
                rows.append(row)
        basis = nullspace(rows, n)
        return [self._from_coords(vec, dom_sorted) for vec in basis]

    def generalized_weight_space(self, eigen: Character, dom: LowerSet, n_cap: int) -> list[ModuleVector]:
        """Nullspace of the n_cap-th powers of the shifted generators."""
        dom_sorted = dom.sorted()
        if not dom_sorted:
            return []
        n = len(dom_sorted)
        rows = []
        for exp in self._basis_generators():
            m = self._theta_matrix(exp, dom_sorted)
            lam = eigen.of_vector(exp)
            shifted = [[m[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
            rows.extend(mat_pow(shifted, n_cap))
        basis = nullspace(rows, n)
        return [self._from_coords(vec, dom_sorted) for vec in basis]

    def _from_coords(self, vec, dom_sorted) -> ModuleVector:
        return ModuleVector(self.tau, {w: c for w, c in zip(dom_sorted, vec)})

    # -- intertwiners ------------------------------------------------------------
    def psi(self, w_r: WeylElement) -> "Intertwiner":
        """Endomorphism sending h.v to h.(F_{w_r}(tau).v), for w_r in the R-group."""
        stab = TauStabilizer(self.algebra, self.tau)
        if not stab.in_r_group(w_r):
            raise NotInRTau(f"{w_r!r} fails the R-group conditions at tau")
        target = self.ev(self.algebra.f_w(w_r))
        return Intertwiner(self, w_r, target)

    # -- the tau-local module structure ---------------------------------------
    def stabilizer(self) -> TauStabilizer:
        return TauStabilizer(self.algebra, self.tau)

    def itg_basis(self, ell_bound: int, coroot_bound: int) -> list[ModuleVector]:
        """Evaluated modified intertwiners over the relative-length ball; the
        triangular basis of the subsystem part of the generalized weight space."""
        uc = u_c_check(self.algebra, self.tau, coroot_bound)
        if not uc.ok:
            raise NotInUC(f"zeta numerator vanishes at tau (witness {uc.witness})", witness=uc.witness)
        stab = self.stabilizer()
        out = []
        for w in stab.subgroup_ball(ell_bound, coroot_bound):
            out.append(self.ev(stab.k_tilde_of(w)))
        return out

    def _k_coordinates(self, x: ModuleVector, stab: TauStabilizer) -> dict[WeylElement, Scalar]:
        """Coordinates of x in the evaluated modified-intertwiner basis."""
        residue = x
        coords: dict[WeylElement, Scalar] = {}
        while not residue.is_zero:
            w = max(residue.support(), key=lambda v: v.sort_key)
            if not stab.in_reflection_subgroup(w):
                raise NotInItgSpan(f"support element {w!r} outside the reflection subgroup")
            basis_vec = self.ev(stab.k_tilde_of(w))
            lead = basis_vec.coeffs.get(w)
            c = residue.coeffs[w] * scalar_inv(lead)
            coords[w] = c
            residue = residue - basis_vec.scale(c)
        return coords

    def k_act(self, k: HeckeElt, x: ModuleVector) -> ModuleVector:
        """Extended action of the tau-local algebra on the subsystem part.

        Lift x through polynomial representatives, multiply, decompose in the
        K~ basis, and evaluate the tau-local coefficients.
        """
        stab = self.stabilizer()
        coords = self._k_coordinates(x, stab)
        h = self.algebra.zero()
        for w, c in coords.items():
            h = h + self._poly_rep(stab, w).scale(c)
        prod = k * h
        out = ModuleVector(self.tau, {})
        while not prod.is_zero:
            supp = prod.support()
            w = max(supp, key=lambda v: v.sort_key)
            if not stab.in_reflection_subgroup(w):
                raise NotInKTau(f"leading support {w!r} outside the reflection subgroup")
            ktw = stab.k_tilde_of(w)
            theta = prod.coeffs[w] * stab.k_lead_inverse(w)
            try:
                val = evaluate(self.tau, theta)
            except PoleAtCharacter as exc:
                raise DecompositionFailure(f"coefficient of K~[{w!r}] has a pole at tau: {exc}") from exc
            prod = prod - ktw.times_fn(theta)
            if w in prod.coeffs:
                raise DecompositionFailure(f"leading coefficient of K~[{w!r}] did not cancel")
            if not is_zero(val):
                out = out + self.ev(ktw).scale(val)
        return out

    def _poly_rep(self, stab: TauStabilizer, w: WeylElement) -> HeckeElt:
        """Polynomial representative K~_w g_w / tau(g_w) with the same value at tau.

        g_w is a least common multiple of the coefficient denominators (max
        multiplicity per distinct binomial factor), which keeps the clearing
        polynomial small while matching the construction's value at tau.
        """
        ktw = stab.k_tilde_of(w)
        needed: dict = {}
        for _, c in ktw.items():
            counts: dict = {}
            for f in c.den:
                counts[f] = counts.get(f, 0) + 1
            for f, k in counts.items():
                needed[f] = max(needed.get(f, 0), k)
        g = LaurentPoly.one(self.algebra.system.rank)
        for f, k in sorted(needed.items(), key=lambda fk: fk[0].sort_key):
            for _ in range(k):
                g = g * f.expand(self.algebra.system.rank)
        rep = ktw.times_fn(RationalElt.from_poly(g))
        return rep.scale(scalar_inv(self.tau.of_poly(g)))

    # -- statistics ------------------------------------------------------------
    def ord_tau(self, x: ModuleVector) -> int:
        """Least k with every k-fold product of vanishing lattice elements
        killing x, by iterated spans of the 2*rank shifted generators."""
        if x.is_zero:
            return 0
        dom = LowerSet.closure(x.support()).sorted()
        index = {w: i for i, w in enumerate(dom)}
        n = len(dom)
        mats = []
        for exp in self._basis_generators():
            m = self._theta_matrix(exp, dom)
            lam = self.tau.of_vector(exp)
            mats.append([[m[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)])
        current = [[Fraction(0)] * n]
        for w, c in x.coeffs.items():
            current[0][index[w]] = c
        k = 0
        while current:
            k += 1
            if k > n + 1:
                raise NotInGenWeightSpace("span iteration failed to vanish")
            basis = SpanBasis(n)
            for vec in current:
                for m in mats:
                    img = [sum(m[i][j] * vec[j] for j in range(n)) for i in range(n)]
                    basis.add(img)
            current = basis.rows
        return k

    def stats(self, x: ModuleVector) -> "VectorStats":
        """Support, relative length, leading term and its breadth, in the
        evaluated modified-intertwiner coordinates."""
        stab = self.stabilizer()
        coords = self._k_coordinates(x, stab)
        if not coords:
            return VectorStats((), NEG_INF, ModuleVector(self.tau, {}), 0)
        ell = {w: stab.ell_tau(w) for w in coords}
        top = max(ell.values())
        leading = ModuleVector(self.tau, {})
        count = 0
        for w, c in coords.items():
            if ell[w] == top:
                leading = leading + self.ev(stab.k_tilde_of(w)).scale(c)
                count += 1
        supp = tuple(sorted(coords, key=lambda w: w.sort_key))
        return VectorStats(supp, top, leading, count)


@dataclass(frozen=True)
class VectorStats:
    supp: tuple[WeylElement, ...]
    ell_tau: int | float
    leading_term: ModuleVector
    n_tau: int


class Intertwiner:
    """The module endomorphism determined by a weight vector image of v."""

    def __init__(self, series: PrincipalSeries, w_r: WeylElement, target: ModuleVector):
        self.series = series
        self.w_r = w_r
        self.target = target

    def __call__(self, x: ModuleVector) -> ModuleVector:
        out = ModuleVector(self.series.tau, {})
        for w, c in x.coeffs.items():
            moved = self.series.act(self.series.algebra.T(w), self.target)
            out = out + moved.scale(c)
        return out


@lru_cache(maxsize=None)
def _matrix_cache(series: PrincipalSeries) -> dict:
    return {}
