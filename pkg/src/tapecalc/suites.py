"""Executable verification corpus: axioms and derived laws checked exactly.

Every axiom of the calculus and every derived equation (structural
coherence, whiskering algebra, copy/discard coherence, enrichment) is
instantiated at small types and checked as an exact matrix identity
under a concrete interpretation.  Object metavariables are enumerated up
to the bounds; morphism metavariables become fresh generators carrying
seeded random matrices, so failures are reproducible from the seed.
"""

from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Iterable, Sequence

from . import kleisli
from .circuit import (CGen, CIdOne, CircuitTerm, CTensor, MonSignature,
                      copier_circuit, cseq, ctensor, discharger_circuit,
                      identity_circuit, sym_circuit)
from .errors import TypeCheckError
from .interp import Interpretation, carrier_of, eval_tape, prod_index
from .kleisli import Matrix, TheoryModel, model_for
from .objects import Monomial, ONE, Polynomial, ZERO, nfold_sum, poly_of_mono
from .tape import (TCirc, TCobang, TCodiag, TIdMon, TIdZero, TOpInj, TSum,
                   TSymPlus, TapeTerm, cobang_tape, codiag_tape, copier_tape,
                   discharger_tape, distributor, dl_nary, id_tape,
                   nfold_codiag, op_inj_tape, symplus_tape, symtensor_tape,
                   tensor_tape, term_tape, tseq, tsum, type_of_tape,
                   whisker_left, whisker_right)
from .theory import App, OpSymbol, SigmaTerm, Var, builtin_theory


@dataclass(frozen=True)
class SuiteBounds:
    sorts: int = 2
    mono_len: int = 2
    poly_len: int = 2
    carrier: int = 3
    samples: int = 5
    max_tuples: int = 400


@dataclass(frozen=True)
class InstanceResult:
    instance: str
    ok: bool
    witness: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.instance}\t{status}\t{self.witness}".rstrip()


@dataclass
class SuiteReport:
    results: list[InstanceResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.ok)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if not r.ok)

    def failures(self) -> list[InstanceResult]:
        return [r for r in self.results if not r.ok]

    def merge(self, other: "SuiteReport") -> "SuiteReport":
        return SuiteReport(self.results + other.results)

    def lines(self) -> Iterable[str]:
        for r in self.results:
            yield r.line()


# --- semantic equality ---------------------------------------------------------

@dataclass(frozen=True)
class SemEqResult:
    kind: str  # "equal" | "unequal" | "type-error"
    witness: tuple[int, int, object, object] | None = None
    message: str = ""

    @property
    def equal(self) -> bool:
        return self.kind == "equal"


def first_difference(m1: Matrix, m2: Matrix):
    for x in range(m1.dom):
        rows = sorted(set(m1.cols[x]) | set(m2.cols[x]))
        for y in rows:
            a, b = m1.entry(y, x), m2.entry(y, x)
            if a != b:
                return (y, x, a, b)
    return None


def sem_eq(t1: TapeTerm, t2: TapeTerm, interp: Interpretation) -> SemEqResult:
    """Decide equality of two tapes under an interpretation, exactly."""
    try:
        dom1, cod1 = type_of_tape(t1, interp.sig)
        dom2, cod2 = type_of_tape(t2, interp.sig)
    except TypeCheckError as exc:
        return SemEqResult("type-error", message=str(exc))
    if dom1 != dom2 or cod1 != cod2:
        return SemEqResult(
            "type-error",
            message=f"type mismatch: {dom1} -> {cod1} vs {dom2} -> {cod2}")
    m1, m2 = eval_tape(t1, interp), eval_tape(t2, interp)
    diff = first_difference(m1, m2)
    if diff is None:
        return SemEqResult("equal")
    return SemEqResult("unequal", witness=diff)


# --- random instantiation -------------------------------------------------------

def derive_seed(master: int, *parts) -> int:
    text = "/".join(str(p) for p in parts)
    return (zlib.crc32(text.encode()) ^ (master & 0xFFFFFFFF)) & 0xFFFFFFFF


def rand_substochastic(dom: int, cod: int, rng: Random) -> Matrix:
    entries = []
    for x in range(dom):
        denom = rng.randint(2, 6)
        remaining = denom
        rows = list(range(cod))
        rng.shuffle(rows)
        for y in rows:
            a = rng.randint(0, remaining)
            remaining -= a
            if a:
                entries.append((y, x, Fraction(a, denom)))
    return Matrix.make(dom, cod, entries)


def rand_natural(dom: int, cod: int, rng: Random) -> Matrix:
    entries = []
    for x in range(dom):
        for y in range(cod):
            w = rng.randint(0, 2)
            if w:
                entries.append((y, x, w))
    return Matrix.make(dom, cod, entries)


def rand_matrix(dom: int, cod: int, model: TheoryModel, rng: Random) -> Matrix:
    if model.semiring is kleisli.NATURALS:
        return rand_natural(dom, cod, rng)
    return rand_substochastic(dom, cod, rng)


class Freshener:
    """Creates fresh generators with seeded random matrices on demand."""

    def __init__(self, interp: Interpretation, rng: Random):
        self.base = interp
        self.rng = rng
        self.extra_sig: dict[str, tuple[Monomial, Monomial]] = {}
        self.extra_mats: dict[str, Matrix] = {}
        self._count = 0

    @property
    def sig(self) -> MonSignature:
        return self.base.sig.with_gens(self.extra_sig)

    def interp(self) -> Interpretation:
        return self.base.with_gens(self.extra_sig, self.extra_mats)

    def circuit(self, u: Monomial, v: Monomial) -> CircuitTerm:
        name = f"?g{self._count}"
        self._count += 1
        self.extra_sig[name] = (u, v)
        self.extra_mats[name] = rand_matrix(
            self.base.mono_size(u), self.base.mono_size(v),
            self.base.model, self.rng)
        return CGen(name)

    def binary_op(self) -> OpSymbol:
        ops = [op for op in self.base.model.theory.primary_ops if op.arity == 2]
        return self.rng.choice(ops)

    def nullary_op(self) -> OpSymbol:
        ops = [op for op in self.base.model.theory.primary_ops if op.arity == 0]
        return ops[0]

    def split_term(self, m: int) -> tuple[SigmaTerm, int]:
        """A term over context m whose tape splits one input into m branches."""
        if m == 0:
            return App(self.nullary_op(), ()), 0

        def nested(i: int) -> SigmaTerm:
            if i == m:
                return Var(i)
            return App(self.binary_op(), (Var(i), nested(i + 1)))

        return nested(1), m

    def tape(self, p: Polynomial, q: Polynomial) -> TapeTerm:
        """A random tape p -> q: branch each monomial of p across q."""
        if p.is_zero:
            return cobang_tape(q)
        branches = []
        for u in p:
            term, ctx = self.split_term(len(q))
            split = term_tape(term, Monomial(u.sorts), ctx)
            blocks = tsum(*(TCirc(self.circuit(u, v)) for v in q))
            branches.append(tseq(split, blocks) if len(q) else split)
        return tseq(tsum(*branches), nfold_codiag(q, len(p)))


def standard_interpretation(model_name: str = "PCA",
                            params: Sequence[Fraction] = (
                                Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)),
                            carriers: Sequence[int] = (2, 3)) -> Interpretation:
    """A generator-free interpretation over sorts A, B, ... for suite runs."""
    names = [chr(ord("A") + i) for i in range(len(carriers))]
    sig = MonSignature(tuple(names), {})
    theory = builtin_theory(model_name, params if model_name == "PCA" else ())
    interp = Interpretation(sig, dict(zip(names, carriers)), {}, model_for(theory))
    interp.validate()
    return interp


# --- enumeration ----------------------------------------------------------------

def all_monomials(sorts: Sequence[str], max_len: int) -> list[Monomial]:
    out = []
    for n in range(max_len + 1):
        out.extend(Monomial(t) for t in itertools.product(sorts, repeat=n))
    return out


def all_polynomials(sorts: Sequence[str], max_mono_len: int,
                    max_polys: int) -> list[Polynomial]:
    monos = all_monomials(sorts, max_mono_len)
    out = []
    for n in range(max_polys + 1):
        out.extend(Polynomial(t) for t in itertools.product(monos, repeat=n))
    return out


def small_polys(sorts: Sequence[str]) -> list[Polynomial]:
    a = sorts[0]
    b = sorts[1 % len(sorts)]
    return [
        ZERO,
        poly_of_mono(ONE),
        poly_of_mono(Monomial((a,))),
        poly_of_mono(Monomial((a, b))),
        Polynomial((Monomial((a,)), Monomial((b,)))),
        Polynomial((ONE, Monomial((a,)))),
        Polynomial((Monomial((a, b)), Monomial((b,)))),
    ]


def rand_poly(rng: Random, sorts: Sequence[str], max_monos: int,
              max_len: int) -> Polynomial:
    if rng.random() < Fraction(1, 8):
        return ZERO
    k = rng.randint(1, max_monos)
    monos = []
    for _ in range(k):
        n = rng.randint(0, max_len)
        monos.append(Monomial(tuple(rng.choice(sorts) for _ in range(n))))
    return Polynomial(tuple(monos))


def capped(seq: list, cap: int) -> list:
    if len(seq) <= cap:
        return seq
    step = len(seq) / cap
    return [seq[int(i * step)] for i in range(cap)]


# --- the axiom suite -------------------------------------------------------------

Builder = Callable[["Ctx"], tuple[TapeTerm, TapeTerm]]


@dataclass
class Ctx:
    fresh: Freshener
    binding: dict

    def __getitem__(self, key):
        return self.binding[key]

    @property
    def sig(self) -> MonSignature:
        return self.fresh.sig


def _repro(interp: Interpretation, lhs: TapeTerm, rhs: TapeTerm) -> str:
    """A one-line reproduction: carriers, fresh matrices and both terms."""
    carriers = ",".join(f"{s}={interp.carriers[s]}" for s in interp.sig.sorts)
    gens = ";".join(f"{n}={m.pretty()}" for n, m in interp.gen_matrices.items()
                    if n.startswith("?"))
    def clip(term):
        text = repr(term)
        return text if len(text) <= 400 else text[:400] + "..."
    return f"carriers[{carriers}] gens[{gens}] lhs={clip(lhs)} rhs={clip(rhs)}"


def _check_instance(name: str, binding_desc: str, fresh: Freshener,
                    lhs: TapeTerm, rhs: TapeTerm) -> InstanceResult:
    interp = fresh.interp()
    result = sem_eq(lhs, rhs, interp)
    if result.equal:
        return InstanceResult(f"{name}[{binding_desc}]", True)
    if result.kind == "type-error":
        return InstanceResult(f"{name}[{binding_desc}]", False,
                              f"type error: {result.message}")
    y, x, a, b = result.witness
    return InstanceResult(
        f"{name}[{binding_desc}]", False,
        f"entry ({y},{x}): lhs={a} rhs={b} | {_repro(interp, lhs, rhs)}")


def _mono_axiom(name: str, vars_: Sequence[str], builder: Builder,
                interp: Interpretation, bounds: SuiteBounds,
                seed: int) -> list[InstanceResult]:
    """Enumerate monomial metavariables fully (capped); one seeded random
    morphism instantiation per tuple."""
    sorts = interp.sig.sorts[:bounds.sorts]
    monos = all_monomials(sorts, bounds.mono_len)
    tuples = capped(list(itertools.product(monos, repeat=len(vars_))),
                    bounds.max_tuples)
    results = []
    for index, tup in enumerate(tuples):
        rng = Random(derive_seed(seed, name, index))
        fresh = Freshener(interp, rng)
        binding = dict(zip(vars_, tup))
        desc = ",".join(f"{k}={v}" for k, v in binding.items()) + f"#{index}"
        lhs, rhs = builder(Ctx(fresh, binding))
        results.append(_check_instance(name, desc, fresh, lhs, rhs))
    return results


def _poly_axiom(name: str, vars_: Sequence[str], builder: Builder,
                interp: Interpretation, bounds: SuiteBounds, seed: int,
                samples: int | None = None) -> list[InstanceResult]:
    """Sample polynomial metavariables; a fresh morphism seed per sample."""
    sorts = interp.sig.sorts[:bounds.sorts]
    n = samples if samples is not None else bounds.samples
    results = []
    for index in range(n):
        rng = Random(derive_seed(seed, name, index))
        fresh = Freshener(interp, rng)
        binding = {v: rand_poly(rng, sorts, bounds.poly_len, bounds.mono_len)
                   for v in vars_}
        desc = ",".join(f"{k}={v}" for k, v in binding.items()) + f"#{index}"
        lhs, rhs = builder(Ctx(fresh, binding))
        results.append(_check_instance(name, desc, fresh, lhs, rhs))
    return results


def _suite_ops(interp: Interpretation) -> list[OpSymbol]:
    return list(interp.model.theory.primary_ops)


def axiom_suite(interp: Interpretation, bounds: SuiteBounds = SuiteBounds(),
                seed: int = 0) -> SuiteReport:
    """Check every axiom of the calculus under the given interpretation."""
    report = SuiteReport()
    add = report.results.extend
    ops = _suite_ops(interp)

    def mono(name, vars_, builder):
        add(_mono_axiom(name, vars_, builder, interp, bounds, seed))

    def polyax(name, vars_, builder, samples=None):
        add(_poly_axiom(name, vars_, builder, interp, bounds, seed, samples))

    # symmetric monoidal axioms, circuit layer
    def c_seq_assoc(ctx):
        c = ctx.fresh.circuit(ctx["U"], ctx["V"])
        d = ctx.fresh.circuit(ctx["V"], ctx["W"])
        e = ctx.fresh.circuit(ctx["W"], ctx["U"])
        return TCirc(cseq(cseq(c, d), e)), TCirc(cseq(c, cseq(d, e)))

    mono("circ-seq-assoc", ["U", "V", "W"], c_seq_assoc)

    def c_id_unit(ctx):
        c = ctx.fresh.circuit(ctx["U"], ctx["V"])
        lhs = cseq(identity_circuit(ctx["U"]), c, identity_circuit(ctx["V"]))
        return TCirc(lhs), TCirc(c)

    mono("circ-id-unit", ["U", "V"], c_id_unit)

    def c_interchange(ctx):
        c1 = ctx.fresh.circuit(ctx["U"], ctx["V"])
        c2 = ctx.fresh.circuit(ctx["U"], ctx["W"])
        d1 = ctx.fresh.circuit(ctx["V"], ctx["W"])
        d2 = ctx.fresh.circuit(ctx["W"], ctx["U"])
        lhs = cseq(ctensor(c1, c2), ctensor(d1, d2))
        rhs = ctensor(cseq(c1, d1), cseq(c2, d2))
        return TCirc(lhs), TCirc(rhs)

    mono("circ-interchange", ["U", "V", "W"], c_interchange)

    def c_unit_tensor(ctx):
        c = ctx.fresh.circuit(ctx["U"], ctx["V"])
        return TCirc(CTensor(CIdOne(), CTensor(c, CIdOne()))), TCirc(c)

    mono("circ-unit-tensor", ["U", "V"], c_unit_tensor)

    def c_tensor_assoc(ctx):
        c1 = ctx.fresh.circuit(ctx["U"], ctx["V"])
        c2 = ctx.fresh.circuit(ctx["V"], ctx["W"])
        c3 = ctx.fresh.circuit(ctx["W"], ctx["U"])
        return (TCirc(CTensor(CTensor(c1, c2), c3)),
                TCirc(CTensor(c1, CTensor(c2, c3))))

    mono("circ-tensor-assoc", ["U", "V", "W"], c_tensor_assoc)

    def c_sym_inv(ctx):
        u, v = ctx["U"], ctx["V"]
        return (TCirc(cseq(sym_circuit(u, v), sym_circuit(v, u))),
                TCirc(identity_circuit(u * v)))

    mono("circ-sym-inv", ["U", "V"], c_sym_inv)

    def c_sym_nat(ctx):
        c = ctx.fresh.circuit(ctx["U"], ctx["V"])
        d = ctx.fresh.circuit(ctx["W"], ctx["X"])
        lhs = cseq(ctensor(c, d), sym_circuit(ctx["V"], ctx["X"]))
        rhs = cseq(sym_circuit(ctx["U"], ctx["W"]), ctensor(d, c))
        return TCirc(lhs), TCirc(rhs)

    mono("circ-sym-nat", ["U", "V", "W", "X"], c_sym_nat)

    # copy/discard comonoid axioms over monomials
    def cd_assoc(ctx):
        u = ctx["U"]
        lhs = cseq(copier_circuit(u), ctensor(copier_circuit(u), identity_circuit(u)))
        rhs = cseq(copier_circuit(u), ctensor(identity_circuit(u), copier_circuit(u)))
        return TCirc(lhs), TCirc(rhs)

    mono("cd-copier-assoc", ["U"], cd_assoc)

    def cd_unit_left(ctx):
        u = ctx["U"]
        lhs = cseq(copier_circuit(u),
                   ctensor(discharger_circuit(u), identity_circuit(u)))
        return TCirc(lhs), TCirc(identity_circuit(u))

    mono("cd-copier-unit-left", ["U"], cd_unit_left)

    def cd_unit_right(ctx):
        u = ctx["U"]
        lhs = cseq(copier_circuit(u),
                   ctensor(identity_circuit(u), discharger_circuit(u)))
        return TCirc(lhs), TCirc(identity_circuit(u))

    mono("cd-copier-unit-right", ["U"], cd_unit_right)

    def cd_comm(ctx):
        u = ctx["U"]
        return (TCirc(cseq(copier_circuit(u), sym_circuit(u, u))),
                TCirc(copier_circuit(u)))

    mono("cd-copier-comm", ["U"], cd_comm)

    # symmetric monoidal axioms, tape layer
    def t_seq_assoc(ctx):
        t = ctx.fresh.tape(ctx["P"], ctx["Q"])
        s = ctx.fresh.tape(ctx["Q"], ctx["R"])
        r = ctx.fresh.tape(ctx["R"], ctx["P"])
        return tseq(tseq(t, s), r), tseq(t, tseq(s, r))

    polyax("tape-seq-assoc", ["P", "Q", "R"], t_seq_assoc)

    def t_id_unit(ctx):
        t = ctx.fresh.tape(ctx["P"], ctx["Q"])
        return tseq(id_tape(ctx["P"]), t, id_tape(ctx["Q"])), t

    polyax("tape-id-unit", ["P", "Q"], t_id_unit)

    def t_interchange(ctx):
        t1 = ctx.fresh.tape(ctx["P"], ctx["Q"])
        t2 = ctx.fresh.tape(ctx["R"], ctx["S"])
        s1 = ctx.fresh.tape(ctx["Q"], ctx["R"])
        s2 = ctx.fresh.tape(ctx["S"], ctx["P"])
        return (tseq(TSum(t1, t2), TSum(s1, s2)),
                TSum(tseq(t1, s1), tseq(t2, s2)))

    polyax("tape-interchange", ["P", "Q", "R", "S"], t_interchange)

    def t_unit_sum(ctx):
        t = ctx.fresh.tape(ctx["P"], ctx["Q"])
        return TSum(TIdZero(), TSum(t, TIdZero())), t

    polyax("tape-unit-sum", ["P", "Q"], t_unit_sum)

    def t_sum_assoc(ctx):
        t1 = ctx.fresh.tape(ctx["P"], ctx["Q"])
        t2 = ctx.fresh.tape(ctx["Q"], ctx["R"])
        t3 = ctx.fresh.tape(ctx["R"], ctx["P"])
        return TSum(TSum(t1, t2), t3), TSum(t1, TSum(t2, t3))

    polyax("tape-sum-assoc", ["P", "Q", "R"], t_sum_assoc)

    def t_symplus_inv(ctx):
        p, q = ctx["P"], ctx["Q"]
        return (tseq(symplus_tape(p, q), symplus_tape(q, p)),
                id_tape(p + q))

    polyax("tape-symplus-inv", ["P", "Q"], t_symplus_inv)

    def t_symplus_nat(ctx):
        t = ctx.fresh.tape(ctx["P"], ctx["Q"])
        s = ctx.fresh.tape(ctx["R"], ctx["S"])
        lhs = tseq(TSum(t, s), symplus_tape(ctx["Q"], ctx["S"]))
        rhs = tseq(symplus_tape(ctx["P"], ctx["R"]), TSum(s, t))
        return lhs, rhs

    polyax("tape-symplus-nat", ["P", "Q", "R", "S"], t_symplus_nat)

    def t_symplus_inv_mono(ctx):
        u, v = ctx["U"], ctx["V"]
        return (tseq(TSymPlus(u, v), TSymPlus(v, u)),
                tsum(TIdMon(u), TIdMon(v)))

    mono("tape-symplus-inv-mono", ["U", "V"], t_symplus_inv_mono)

    def t_symplus_nat_circ(ctx):
        c = ctx.fresh.circuit(ctx["U"], ctx["V"])
        d = ctx.fresh.circuit(ctx["W"], ctx["X"])
        lhs = tseq(TSum(TCirc(c), TCirc(d)), TSymPlus(ctx["V"], ctx["X"]))
        rhs = tseq(TSymPlus(ctx["U"], ctx["W"]), TSum(TCirc(d), TCirc(c)))
        return lhs, rhs

    mono("tape-symplus-nat-circ", ["U", "V", "W", "X"], t_symplus_nat_circ)

    # finite coproduct structure
    def nabla_assoc(ctx):
        u = ctx["U"]
        lhs = tseq(tsum(TIdMon(u), TCodiag(u)), TCodiag(u))
        rhs = tseq(tsum(TCodiag(u), TIdMon(u)), TCodiag(u))
        return lhs, rhs

    mono("codiag-assoc", ["U"], nabla_assoc)

    def nabla_unit(ctx):
        u = ctx["U"]
        return tseq(tsum(TCobang(u), TIdMon(u)), TCodiag(u)), TIdMon(u)

    mono("codiag-unit", ["U"], nabla_unit)

    def nabla_comm(ctx):
        u = ctx["U"]
        return tseq(TSymPlus(u, u), TCodiag(u)), TCodiag(u)

    mono("codiag-comm", ["U"], nabla_comm)

    def nabla_nat_circ(ctx):
        c = ctx.fresh.circuit(ctx["U"], ctx["V"])
        lhs = tseq(TCodiag(ctx["U"]), TCirc(c))
        rhs = tseq(TSum(TCirc(c), TCirc(c)), TCodiag(ctx["V"]))
        return lhs, rhs

    mono("codiag-nat-circ", ["U", "V"], nabla_nat_circ)

    def cobang_nat_circ(ctx):
        c = ctx.fresh.circuit(ctx["U"], ctx["V"])
        return tseq(TCobang(ctx["U"]), TCirc(c)), TCobang(ctx["V"])

    mono("cobang-nat-circ", ["U", "V"], cobang_nat_circ)

    # naturality of the operation branchings
    for op in ops:
        op_tag = str(op)

        def nabla_nat_op(ctx, op=op):
            u = ctx["U"]
            lhs = tseq(TCodiag(u), TOpInj(op, u))
            rhs = tseq(tsum(TOpInj(op, u), TOpInj(op, u)),
                       codiag_tape(nfold_sum(poly_of_mono(u), op.arity)))
            return lhs, rhs

        mono(f"codiag-nat-op({op_tag})", ["U"], nabla_nat_op)

        def cobang_nat_op(ctx, op=op):
            u = ctx["U"]
            return (tseq(TCobang(u), TOpInj(op, u)),
                    cobang_tape(nfold_sum(poly_of_mono(u), op.arity)))

        mono(f"cobang-nat-op({op_tag})", ["U"], cobang_nat_op)

        def op_nat_tape(ctx, op=op):
            p, q = ctx["P"], ctx["Q"]
            t = ctx.fresh.tape(p, q)
            lhs = tseq(t, op_inj_tape(op, q))
            rhs = tseq(op_inj_tape(op, p), tsum(*([t] * op.arity)))
            return lhs, rhs

        polyax(f"op-nat-tape({op_tag})", ["P", "Q"], op_nat_tape)

    # the taping functor
    def tape_functor_id(ctx):
        return TCirc(identity_circuit(ctx["U"])), TIdMon(ctx["U"])

    mono("tape-functor-id", ["U"], tape_functor_id)

    def tape_functor_seq(ctx):
        c = ctx.fresh.circuit(ctx["U"], ctx["V"])
        d = ctx.fresh.circuit(ctx["V"], ctx["W"])
        return TCirc(cseq(c, d)), tseq(TCirc(c), TCirc(d))

    mono("tape-functor-seq", ["U", "V", "W"], tape_functor_seq)

    # equations of the theory, as term tapes
    for eq in interp.model.theory.equations:
        def eq_axiom(ctx, eq=eq):
            u = ctx["U"]
            return (term_tape(eq.lhs, u, eq.context),
                    term_tape(eq.rhs, u, eq.context))

        mono(f"theory-eq({eq.name})", ["U"], eq_axiom)

    return report


# --- the lemma suite --------------------------------------------------------------

def _pairs(interp: Interpretation, bounds: SuiteBounds) -> list[tuple[Polynomial, Polynomial]]:
    polys = small_polys(interp.sig.sorts[:bounds.sorts])
    return list(itertools.product(polys, repeat=2))


def lemma_suite(interp: Interpretation, bounds: SuiteBounds = SuiteBounds(),
                seed: int = 0) -> SuiteReport:
    """Derived laws: fc rig equalities, copy/discard coherence, whiskering
    algebra, operation naturality and enrichment."""
    report = SuiteReport()
    add = report.results.append
    sig = interp.sig
    sorts = sig.sorts[:bounds.sorts]
    polys = all_polynomials(sorts, bounds.mono_len, bounds.poly_len)
    ops = _suite_ops(interp)

    def check(name, desc, lhs, rhs, fresh=None):
        fresh = fresh or Freshener(interp, Random(derive_seed(seed, name, desc)))
        add(_check_instance(name, desc, fresh, lhs, rhs))

    # fc rig structure of the tensor (codiag and cobang against (x))
    for i, (x, y) in enumerate(_pairs(interp, bounds)):
        desc = f"X={x},Y={y}#{i}"
        check("fcrig-codiag-right", desc,
              codiag_tape(x * y),
              tensor_tape(codiag_tape(x), id_tape(y), sig))
        check("fcrig-codiag-left", desc,
              codiag_tape(x * y),
              tseq(distributor(x, y, y, inverse=True),
                   tensor_tape(id_tape(x), codiag_tape(y), sig)))
        check("fcrig-cobang-right", desc,
              cobang_tape(x * y),
              tensor_tape(cobang_tape(x), id_tape(y), sig))
        check("fcrig-cobang-left", desc,
              cobang_tape(x * y),
              tensor_tape(id_tape(x), cobang_tape(y), sig))

    # interaction of sums with copy/discard (functional/total codiagonals)
    for i, x in enumerate(polys):
        desc = f"X={x}#{i}"
        nabla, bot = codiag_tape(x), cobang_tape(x)
        cop, disc = copier_tape(x), discharger_tape(x)
        check("sumcd-codiag-copier", desc,
              tseq(nabla, cop),
              tseq(tsum(cop, cop), codiag_tape(x * x)))
        check("sumcd-codiag-discard", desc,
              tseq(nabla, disc),
              tseq(tsum(disc, disc), TCodiag(ONE)))
        check("sumcd-cobang-copier", desc,
              tseq(bot, cop), cobang_tape(x * x))
        check("sumcd-cobang-discard", desc,
              tseq(bot, disc), TCobang(ONE))
        check("maps-codiag-functional", desc,
              tseq(nabla, cop),
              tseq(copier_tape(x + x), tensor_tape(nabla, nabla, sig)))
        check("maps-codiag-total", desc,
              tseq(nabla, disc), discharger_tape(x + x))
        check("maps-cobang-functional", desc,
              tseq(bot, cop),
              tseq(copier_tape(ZERO), tensor_tape(bot, bot, sig)))
        check("maps-cobang-total", desc,
              tseq(bot, disc), discharger_tape(ZERO))

    # coherence of copy/discard with the sum decomposition
    for i, (x, y) in enumerate(_pairs(interp, bounds)):
        desc = f"X={x},Y={y}#{i}"
        blocks = tsum(copier_tape(x), cobang_tape(x * y),
                      cobang_tape(y * x), copier_tape(y))
        reshuffle = tsum(distributor(x, x, y, inverse=True),
                         distributor(y, x, y, inverse=True))
        check("coh-copier-sum", desc, copier_tape(x + y), tseq(blocks, reshuffle))
        check("coh-discharger-sum", desc,
              discharger_tape(x + y),
              tseq(tsum(discharger_tape(x), discharger_tape(y)), TCodiag(ONE)))

    # canonical-copy and all-ones oracles
    for i, p in enumerate(polys):
        desc = f"P={p}#{i}"
        idx = prod_index(p, p, interp)
        n = carrier_of(p, interp)
        expected_cop = Matrix.make(n, carrier_of(p * p, interp),
                                   ((idx(x, x), x, 1) for x in range(n)))
        got_cop = eval_tape(copier_tape(p), interp)
        ok = got_cop == expected_cop
        add(InstanceResult(f"copier-canonical[{desc}]", ok,
                           "" if ok else "matrix differs from transported copy map"))
        expected_disc = Matrix.make(n, 1, ((0, x, 1) for x in range(n)))
        got_disc = eval_tape(discharger_tape(p), interp)
        ok = got_disc == expected_disc
        add(InstanceResult(f"discharger-canonical[{desc}]", ok,
                           "" if ok else "matrix is not the all-ones row"))

    # distributor sanity: composing with the inverse
    for i, (p, q) in enumerate(_pairs(interp, bounds)):
        r = q + poly_of_mono(ONE)
        desc = f"P={p},Q={q},R={r}#{i}"
        check("dl-inverse", desc,
              tseq(distributor(p, q, r), distributor(p, q, r, inverse=True)),
              id_tape(p * (q + r)))

    # operation naturality and the n-ary distributor lemmas
    for op in ops:
        op_tag = str(op)
        for index in range(bounds.samples):
            rng = Random(derive_seed(seed, f"opnat({op_tag})", index))
            fresh = Freshener(interp, rng)
            x = rand_poly(rng, sorts, bounds.poly_len, bounds.mono_len)
            y = rand_poly(rng, sorts, bounds.poly_len, bounds.mono_len)
            h = fresh.tape(x, y)
            desc = f"X={x},Y={y}#{index}"
            check(f"opinj-natural({op_tag})", desc,
                  tseq(h, op_inj_tape(op, y)),
                  tseq(op_inj_tape(op, x), tsum(*([h] * op.arity))),
                  fresh)
        for i, (x, y) in enumerate(capped(_pairs(interp, bounds), 20)):
            desc = f"X={x},Y={y}#{i}"
            n = op.arity
            check(f"dr-n-opinj({op_tag})", desc,
                  tensor_tape(op_inj_tape(op, x), id_tape(y), sig),
                  op_inj_tape(op, x * y))
            check(f"dl-n-opinj({op_tag})", desc,
                  tseq(tensor_tape(id_tape(y), op_inj_tape(op, x), sig),
                       dl_nary(y, [x] * n)),
                  op_inj_tape(op, y * x))

    for m in range(4):
        for i, (x, y) in enumerate(capped(_pairs(interp, bounds), 20)):
            desc = f"X={x},Y={y},n={m}#{i}"
            check("dr-n-codiag", desc,
                  tensor_tape(nfold_codiag(x, m), id_tape(y), sig),
                  nfold_codiag(x * y, m))
            check("dl-n-codiag", desc,
                  tensor_tape(id_tape(y), nfold_codiag(x, m), sig),
                  tseq(dl_nary(y, [x] * m), nfold_codiag(y * x, m)))

    # enrichment of hom-sets over the theory
    enrichment_ops = [op for op in ops if op.arity == 2][:2]
    for op in enrichment_ops:
        t_term, ctx_n = App(op, (Var(1), Var(2))), 2
        for index in range(bounds.samples):
            rng = Random(derive_seed(seed, f"enrich({op})", index))
            fresh = Freshener(interp, rng)
            x = rand_poly(rng, sorts, bounds.poly_len, bounds.mono_len)
            y = rand_poly(rng, sorts, bounds.poly_len, bounds.mono_len)
            z = rand_poly(rng, sorts, bounds.poly_len, bounds.mono_len)
            hs = [fresh.tape(x, y) for _ in range(ctx_n)]
            desc = f"X={x},Y={y},Z={z}#{index}"

            def enriched(ts, dom, cod):
                return tseq(term_tape(t_term, dom, ctx_n), tsum(*ts),
                            nfold_codiag(cod, ctx_n))

            g_out = fresh.tape(y, z)
            check(f"enrich-post({op})", desc,
                  tseq(enriched(hs, x, y), g_out),
                  enriched([tseq(h, g_out) for h in hs], x, z), fresh)
            g_in = fresh.tape(z, x)
            check(f"enrich-pre({op})", desc,
                  tseq(g_in, enriched(hs, x, y)),
                  enriched([tseq(g_in, h) for h in hs], z, y), fresh)
            w = rand_poly(rng, sorts, bounds.poly_len, bounds.mono_len)
            g = fresh.tape(z, w)
            check(f"enrich-tensor-right({op})", desc,
                  tensor_tape(enriched(hs, x, y), g, fresh.sig),
                  enriched([tensor_tape(h, g, fresh.sig) for h in hs],
                           x * z, y * w), fresh)
            check(f"enrich-tensor-left({op})", desc,
                  tensor_tape(g, enriched(hs, x, y), fresh.sig),
                  enriched([tensor_tape(g, h, fresh.sig) for h in hs],
                           z * x, w * y), fresh)

    report.results.extend(whiskering_suite(interp, bounds, seed).results)
    return report


def whiskering_suite(interp: Interpretation, bounds: SuiteBounds = SuiteBounds(),
                     seed: int = 0) -> SuiteReport:
    """The eighteen laws of the whiskering algebra, sampled and exact."""
    report = SuiteReport()
    add = report.results.append
    sorts = interp.sig.sorts[:bounds.sorts]
    monos = [m for m in all_monomials(sorts, bounds.mono_len)]

    def sample(index, law):
        rng = Random(derive_seed(seed, law, index))
        fresh = Freshener(interp, rng)
        rp = lambda: rand_poly(rng, sorts, bounds.poly_len, bounds.mono_len)
        return rng, fresh, rp

    def check(law, index, fresh, lhs, rhs, desc):
        add(_check_instance(law, f"{desc}#{index}", fresh, lhs, rhs))

    n_samples = max(bounds.samples, 3)
    for index in range(n_samples):
        rng, fresh, rp = sample(index, "whisker")
        sig = fresh.sig
        s, t_poly = rp(), rp()
        p, q, r = rp(), rp(), rp()
        t = fresh.tape(p, q)
        t_s = fresh.tape(q, r)
        u = rng.choice(monos)
        f_op = fresh.binary_op()
        desc = f"S={s},T={t_poly},P={p},Q={q}"
        sig = fresh.sig

        check("W1-left", index, fresh,
              whisker_left(s, id_tape(p), sig), id_tape(s * p), desc)
        check("W1-right", index, fresh,
              whisker_right(id_tape(p), s, sig), id_tape(p * s), desc)
        check("W2-left", index, fresh,
              whisker_left(s, tseq(t, t_s), sig),
              tseq(whisker_left(s, t, sig), whisker_left(s, t_s, sig)), desc)
        check("W2-right", index, fresh,
              whisker_right(tseq(t, t_s), s, sig),
              tseq(whisker_right(t, s, sig), whisker_right(t_s, s, sig)), desc)
        check("W3-left", index, fresh, whisker_left(ONE, t, sig), t, desc)
        check("W3-right", index, fresh, whisker_right(t, ONE, sig), t, desc)
        check("W4-left", index, fresh, whisker_left(ZERO, t, sig), TIdZero(), desc)
        check("W4-right", index, fresh, whisker_right(t, ZERO, sig), TIdZero(), desc)

        t2 = fresh.tape(r, p)
        sig = fresh.sig
        check("W5-left", index, fresh,
              whisker_left(s, TSum(t, t2), sig),
              tseq(distributor(s, p, r),
                   TSum(whisker_left(s, t, sig), whisker_left(s, t2, sig)),
                   distributor(s, q, p, inverse=True)), desc)
        check("W5-right", index, fresh,
              whisker_right(TSum(t, t2), s, sig),
              TSum(whisker_right(t, s, sig), whisker_right(t2, s, sig)), desc)
        check("W6-left", index, fresh,
              whisker_left(s + t_poly, t, sig),
              TSum(whisker_left(s, t, sig), whisker_left(t_poly, t, sig)), desc)
        check("W6-right", index, fresh,
              whisker_right(t, s + t_poly, sig),
              tseq(distributor(p, s, t_poly),
                   TSum(whisker_right(t, s, sig), whisker_right(t, t_poly, sig)),
                   distributor(q, s, t_poly, inverse=True)), desc)

        t_b = fresh.tape(r, s)
        sig = fresh.sig
        check("W7-exchange", index, fresh,
              tseq(whisker_left(p, t_b, sig), whisker_right(t, s, sig)),
              tseq(whisker_right(t, r, sig), whisker_left(q, t_b, sig)), desc)

        check("W8-codiag", index, fresh,
              whisker_right(TCodiag(u), s, sig),
              codiag_tape(poly_of_mono(u) * s), f"U={u},S={s}")
        check("W9-cobang", index, fresh,
              whisker_right(TCobang(u), s, sig),
              cobang_tape(poly_of_mono(u) * s), f"U={u},S={s}")
        check("W10-symplus", index, fresh,
              whisker_right(symplus_tape(p, q), s, sig),
              symplus_tape(p * s, q * s), desc)
        check("W11-symtensor", index, fresh,
              symtensor_tape(p * q, s),
              tseq(whisker_left(p, symtensor_tape(q, s), sig),
                   whisker_right(symtensor_tape(p, s), q, sig)), desc)
        check("W12-sym-nat", index, fresh,
              tseq(whisker_right(t, s, sig), symtensor_tape(q, s)),
              tseq(symtensor_tape(p, s), whisker_left(s, t, sig)), desc)
        check("W13-left-right", index, fresh,
              whisker_left(s, whisker_right(t, t_poly, sig), sig),
              whisker_right(whisker_left(s, t, sig), t_poly, sig), desc)
        check("W14-left-left", index, fresh,
              whisker_left(s * t_poly, t, sig),
              whisker_left(s, whisker_left(t_poly, t, sig), sig), desc)
        check("W15-right-right", index, fresh,
              whisker_right(t, t_poly * s, sig),
              whisker_right(whisker_right(t, t_poly, sig), s, sig), desc)
        check("W16-right-dl", index, fresh,
              whisker_right(distributor(p, q, r), s, sig),
              distributor(p, q * s, r * s), desc)
        check("W17-left-dl", index, fresh,
              whisker_left(s, distributor(p, q, r), sig),
              tseq(distributor(s * p, q, r),
                   distributor(s, p * q, p * r, inverse=True)), desc)
        check("W18-opinj", index, fresh,
              whisker_right(TOpInj(f_op, u), s, sig),
              op_inj_tape(f_op, poly_of_mono(u) * s), f"U={u},S={s}")

    return report


# --- matrix-level structural coherence ------------------------------------------

def coherence_suite(bounds: SuiteBounds = SuiteBounds(), seed: int = 0,
                    max_size: int = 3) -> SuiteReport:
    """Permutation and naturality checks of the structural matrices."""
    report = SuiteReport()
    add = report.results.append
    sizes = range(max_size + 1)

    for x, y in itertools.product(sizes, repeat=2):
        for name, m in (("symT", kleisli.sym_tensor(x, y)),
                        ("symP", kleisli.sym_plus(x, y))):
            ok = m.is_permutation()
            add(InstanceResult(f"perm-{name}[{x},{y}]", ok,
                               "" if ok else "not a permutation"))
            back = (kleisli.sym_tensor(y, x) if name == "symT"
                    else kleisli.sym_plus(y, x))
            ok = m.then(back) == Matrix.identity(m.dom)
            add(InstanceResult(f"inv-{name}[{x},{y}]", ok,
                               "" if ok else "inverse composite not identity"))

    for x, y, z in itertools.product(sizes, repeat=3):
        d = kleisli.dl(x, y, z)
        ok = d.is_permutation()
        add(InstanceResult(f"perm-dl[{x},{y},{z}]", ok,
                           "" if ok else "not a permutation"))
        ok = kleisli.dr(x, y, z).is_permutation()
        add(InstanceResult(f"perm-dr[{x},{y},{z}]", ok,
                           "" if ok else "not a permutation"))
        ok = d.then(d.transpose_permutation()) == Matrix.identity(d.dom)
        add(InstanceResult(f"dl-inv[{x},{y},{z}]", ok,
                           "" if ok else "dl;dl^-1 is not the identity"))
        rng = Random(derive_seed(seed, "dl-nat", x, y, z))
        for index in range(2):
            f = rand_substochastic(x, rng.randint(0, max_size), rng)
            g = rand_substochastic(y, rng.randint(0, max_size), rng)
            h = rand_substochastic(z, rng.randint(0, max_size), rng)
            lhs = f.tensor(g.oplus(h)).then(kleisli.dl(f.cod, g.cod, h.cod))
            rhs = d.then(f.tensor(g).oplus(f.tensor(h)))
            ok = lhs == rhs
            add(InstanceResult(f"dl-nat[{x},{y},{z}]#{index}", ok,
                               "" if ok else "dl naturality fails"))

    return report
