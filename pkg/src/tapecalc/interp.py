"""Interpretations and the compositional semantics of circuits and tapes.

An interpretation assigns a finite carrier to every sort and an exact
matrix to every generator; it extends homomorphically to all circuits
and tapes.  Carrier indexing is fixed once and for all: tensor indices
are left-major within a monomial, and a polynomial carrier concatenates
its monomial blocks in order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from . import kleisli
from .circuit import (CCopier, CDischarger, CGen, CIdOne, CIdSort, CSeq, CSym,
                      CTensor, CircuitTerm, MonSignature)
from .errors import DimensionError, ModelError, UnknownSortError
from .kleisli import Matrix, TheoryModel, op_matrix
from .objects import Monomial, Polynomial
from .tape import (TCirc, TCobang, TCodiag, TIdMon, TIdZero, TOpInj, TSeq,
                   TSum, TSymPlus, TapeTerm)


@dataclass(frozen=True)
class Interpretation:
    sig: MonSignature
    carriers: Mapping[str, int]
    gen_matrices: Mapping[str, Matrix]
    model: TheoryModel
    labels: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def validate(self) -> None:
        for s in self.sig.sorts:
            if s not in self.carriers:
                raise UnknownSortError(f"sort {s} has no carrier")
            if self.carriers[s] < 0:
                raise ModelError(f"carrier of {s} must be a natural number")
        for name, (ar, coar) in self.sig.gens.items():
            m = self.gen_matrices.get(name)
            if m is None:
                raise ModelError(f"generator {name} has no matrix")
            if (m.dom, m.cod) != (self.mono_size(ar), self.mono_size(coar)):
                raise DimensionError(
                    f"matrix of {name} is {m.cod}x{m.dom}, expected "
                    f"{self.mono_size(coar)}x{self.mono_size(ar)}")
        failures = kleisli.model_soundness(self.model)
        if failures:
            names = ", ".join(eq.name or str(eq) for eq in failures)
            raise ModelError(f"model weights violate theory equations: {names}")

    def sort_size(self, name: str) -> int:
        try:
            return self.carriers[name]
        except KeyError:
            raise UnknownSortError(f"sort {name} has no carrier")

    def mono_size(self, u: Monomial) -> int:
        size = 1
        for s in u:
            size *= self.sort_size(s)
        return size

    def poly_size(self, p: Polynomial) -> int:
        return sum(self.mono_size(u) for u in p)

    def with_gens(self, extra_sig: Mapping[str, tuple[Monomial, Monomial]],
                  extra_matrices: Mapping[str, Matrix]) -> "Interpretation":
        mats = dict(self.gen_matrices)
        mats.update(extra_matrices)
        return Interpretation(self.sig.with_gens(extra_sig), self.carriers,
                              mats, self.model, self.labels)


def carrier_of(p: Union[Polynomial, Monomial], interp: Interpretation) -> int:
    if isinstance(p, Monomial):
        return interp.mono_size(p)
    return interp.poly_size(p)


def mono_offsets(p: Polynomial, interp: Interpretation) -> list[int]:
    """Start index of each monomial block in the carrier of p."""
    offsets, acc = [], 0
    for u in p:
        offsets.append(acc)
        acc += interp.mono_size(u)
    return offsets


def prod_index(p: Polynomial, q: Polynomial, interp: Interpretation):
    """The index bijection carrier(P) x carrier(Q) -> carrier(P (x) Q).

    Block (i, j) of the product polynomial holds the pairs from the i-th
    monomial of P and the j-th of Q, with the P-part major within the
    block.  Returns a function of two carrier indices.
    """
    p_offsets = mono_offsets(p, interp)
    q_offsets = mono_offsets(q, interp)
    q_sizes = [interp.mono_size(v) for v in q]
    pq_offsets = mono_offsets(p * q, interp)
    n_q = len(q_sizes)

    def locate(offsets: list[int], idx: int) -> tuple[int, int]:
        block = 0
        for b, start in enumerate(offsets):
            if idx >= start:
                block = b
            else:
                break
        return block, idx - offsets[block]

    def index(x: int, y: int) -> int:
        i, a = locate(p_offsets, x)
        j, b = locate(q_offsets, y)
        return pq_offsets[i * n_q + j] + a * q_sizes[j] + b

    return index


def eval_circuit(c: CircuitTerm, interp: Interpretation) -> Matrix:
    if isinstance(c, CIdSort):
        return Matrix.identity(interp.sort_size(c.sort))
    if isinstance(c, CIdOne):
        return Matrix.identity(1)
    if isinstance(c, CGen):
        interp.sig.gen_type(c.name)
        try:
            return interp.gen_matrices[c.name]
        except KeyError:
            raise ModelError(f"generator {c.name} has no matrix")
    if isinstance(c, CSym):
        return kleisli.sym_tensor(interp.sort_size(c.left),
                                  interp.sort_size(c.right))
    if isinstance(c, CSeq):
        return eval_circuit(c.first, interp).then(eval_circuit(c.second, interp))
    if isinstance(c, CTensor):
        return eval_circuit(c.top, interp).tensor(eval_circuit(c.bottom, interp))
    if isinstance(c, CCopier):
        return kleisli.copier(interp.sort_size(c.sort))
    if isinstance(c, CDischarger):
        return kleisli.discharger(interp.sort_size(c.sort))
    raise ModelError(f"not a circuit term: {c!r}")


def eval_tape(t: TapeTerm, interp: Interpretation) -> Matrix:
    if isinstance(t, TIdMon):
        return Matrix.identity(interp.mono_size(t.mono))
    if isinstance(t, TIdZero):
        return Matrix.identity(0)
    if isinstance(t, TCirc):
        return eval_circuit(t.circuit, interp)
    if isinstance(t, TSymPlus):
        return kleisli.sym_plus(interp.mono_size(t.left),
                                interp.mono_size(t.right))
    if isinstance(t, TSeq):
        return eval_tape(t.first, interp).then(eval_tape(t.second, interp))
    if isinstance(t, TSum):
        return eval_tape(t.top, interp).oplus(eval_tape(t.bottom, interp))
    if isinstance(t, TCobang):
        return kleisli.cobang(interp.mono_size(t.mono))
    if isinstance(t, TCodiag):
        return kleisli.codiag(interp.mono_size(t.mono))
    if isinstance(t, TOpInj):
        return op_matrix(t.op, interp.model, interp.mono_size(t.mono))
    raise ModelError(f"not a tape term: {t!r}")
