"""Inner-layer string diagrams: circuits over a monoidal signature.

Circuits are typed by monomials.  Generators carry monomial arities and
coarities; every sort has a copier and a discharger, extended to whole
monomials by the usual inductive clauses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import TypeCheckError, UnknownGeneratorError, UnknownSortError
from .objects import Monomial, ONE


@dataclass(frozen=True)
class MonSignature:
    sorts: tuple[str, ...] = ()
    gens: Mapping[str, tuple[Monomial, Monomial]] = field(default_factory=dict)

    def __post_init__(self):
        for name, (ar, coar) in self.gens.items():
            for s in tuple(ar) + tuple(coar):
                if s not in self.sorts:
                    raise UnknownSortError(
                        f"generator {name} mentions unregistered sort {s}")

    def check_sort(self, name: str) -> None:
        if name not in self.sorts:
            raise UnknownSortError(f"unregistered sort: {name}")

    def gen_type(self, name: str) -> tuple[Monomial, Monomial]:
        try:
            return self.gens[name]
        except KeyError:
            raise UnknownGeneratorError(f"unknown generator: {name}")

    def with_gens(self, extra: Mapping[str, tuple[Monomial, Monomial]]) -> "MonSignature":
        gens = dict(self.gens)
        gens.update(extra)
        return MonSignature(self.sorts, gens)


# --- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class CircuitTerm:
    pass


@dataclass(frozen=True)
class CIdSort(CircuitTerm):
    sort: str


@dataclass(frozen=True)
class CIdOne(CircuitTerm):
    pass


@dataclass(frozen=True)
class CGen(CircuitTerm):
    name: str


@dataclass(frozen=True)
class CSym(CircuitTerm):
    left: str
    right: str


@dataclass(frozen=True)
class CSeq(CircuitTerm):
    first: CircuitTerm
    second: CircuitTerm


@dataclass(frozen=True)
class CTensor(CircuitTerm):
    top: CircuitTerm
    bottom: CircuitTerm


@dataclass(frozen=True)
class CCopier(CircuitTerm):
    sort: str


@dataclass(frozen=True)
class CDischarger(CircuitTerm):
    sort: str


def type_of_circuit(c: CircuitTerm, sig: MonSignature) -> tuple[Monomial, Monomial]:
    if isinstance(c, CIdSort):
        sig.check_sort(c.sort)
        m = Monomial((c.sort,))
        return m, m
    if isinstance(c, CIdOne):
        return ONE, ONE
    if isinstance(c, CGen):
        return sig.gen_type(c.name)
    if isinstance(c, CSym):
        sig.check_sort(c.left)
        sig.check_sort(c.right)
        return Monomial((c.left, c.right)), Monomial((c.right, c.left))
    if isinstance(c, CSeq):
        dom1, cod1 = type_of_circuit(c.first, sig)
        dom2, cod2 = type_of_circuit(c.second, sig)
        if cod1 != dom2:
            raise TypeCheckError(
                f"circuit composition mismatch: {cod1} vs {dom2}")
        return dom1, cod2
    if isinstance(c, CTensor):
        dom1, cod1 = type_of_circuit(c.top, sig)
        dom2, cod2 = type_of_circuit(c.bottom, sig)
        return dom1 * dom2, cod1 * cod2
    if isinstance(c, CCopier):
        sig.check_sort(c.sort)
        m = Monomial((c.sort,))
        return m, m * m
    if isinstance(c, CDischarger):
        sig.check_sort(c.sort)
        return Monomial((c.sort,)), ONE
    raise TypeCheckError(f"not a circuit term: {c!r}")


# --- derived structural circuits ----------------------------------------------

def cseq(*parts: CircuitTerm) -> CircuitTerm:
    term = parts[0]
    for p in parts[1:]:
        term = CSeq(term, p)
    return term


def ctensor(*parts: CircuitTerm) -> CircuitTerm:
    parts = tuple(p for p in parts if not isinstance(p, CIdOne))
    if not parts:
        return CIdOne()
    term = parts[0]
    for p in parts[1:]:
        term = CTensor(term, p)
    return term


def identity_circuit(u: Monomial) -> CircuitTerm:
    return ctensor(*(CIdSort(a) for a in u))


def _sym_sort_mono(a: str, w: Monomial) -> CircuitTerm:
    # sigma_{A, B.W'} = (sigma_{A,B} (x) id_{W'}) ; (id_B (x) sigma_{A,W'})
    if w.is_unit:
        return CIdSort(a)
    b, w_rest = w.sorts[0], Monomial(w.sorts[1:])
    return cseq(ctensor(CSym(a, b), identity_circuit(w_rest)),
                ctensor(CIdSort(b), _sym_sort_mono(a, w_rest)))


def sym_circuit(u: Monomial, w: Monomial) -> CircuitTerm:
    """sigma_{U,W} : U (x) W -> W (x) U by the inductive clauses."""
    if u.is_unit:
        return identity_circuit(w)
    if w.is_unit:
        return identity_circuit(u)
    a, u_rest = u.sorts[0], Monomial(u.sorts[1:])
    # sigma_{A.U',W} = (id_A (x) sigma_{U',W}) ; (sigma_{A,W} (x) id_{U'})
    return cseq(ctensor(CIdSort(a), sym_circuit(u_rest, w)),
                ctensor(_sym_sort_mono(a, w), identity_circuit(u_rest)))


def copier_circuit(u: Monomial) -> CircuitTerm:
    """copier_U : U -> UU, interleaving the per-sort copies."""
    if u.is_unit:
        return CIdOne()
    a, u_rest = u.sorts[0], Monomial(u.sorts[1:])
    return cseq(
        ctensor(CCopier(a), copier_circuit(u_rest)),
        ctensor(CIdSort(a), ctensor(sym_circuit(Monomial((a,)), u_rest),
                                    identity_circuit(u_rest))))


def discharger_circuit(u: Monomial) -> CircuitTerm:
    return ctensor(*(CDischarger(a) for a in u))


def structural_circuit(kind: str, u: Monomial,
                       v: Monomial | None = None) -> CircuitTerm:
    """Dispatch to the inductively defined structural circuits."""
    if kind == "id":
        return identity_circuit(u)
    if kind == "sym":
        if v is None:
            raise TypeCheckError("sym needs two monomials")
        return sym_circuit(u, v)
    if kind == "copier":
        return copier_circuit(u)
    if kind == "discharger":
        return discharger_circuit(u)
    raise TypeCheckError(f"unknown structural circuit kind {kind!r}")
