"""Feasibility and finality tests for rows, plus an internal DPLL solver.

A row is feasible when it intersects the model set, final when it is
contained in it.  A test answering "no" only when the row is certainly
infeasible is weak; if its "yes" can also be trusted it is perfect.  The
solver-backed test is perfect; Test 1 and Test 2 are cheap weak tests
(Test 1 turns perfect on positive CNFs).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .formulas import Clause, Cnf
from .rows import ONE, TWO, ZERO, Row012, Row012e, slot_of_lit


@dataclass(frozen=True)
class Verdict:
    """Feasibility answer plus its strength."""

    feasible: bool
    perfect: bool

    def __bool__(self) -> bool:
        return self.feasible


@dataclass
class SolverStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0


# A decision procedure maps a Cnf to a model or None (UNSAT).  dpll_sat below
# is the built-in one; anything with this signature can be plugged into the
# engine instead.
SolverFn = Callable[[Cnf], "tuple[int, ...] | None"]


def dpll_sat(cnf: Cnf, stats: SolverStats | None = None) -> tuple[int, ...] | None:
    """Complete DPLL with unit propagation.

    Branches on the lowest-indexed unassigned variable still occurring in an
    unresolved clause, value 1 first; variables never forced stay 0.  Returns
    a model as a bitstring, or None when unsatisfiable.
    """
    if stats is None:
        stats = SolverStats()
    assign: dict[int, bool] = {}

    def simplify(clauses: list[list[int]], lit: int) -> list[list[int]] | None:
        out = []
        for c in clauses:
            if lit in c:
                continue
            if -lit in c:
                c = [x for x in c if x != -lit]
                if not c:
                    return None
            out.append(c)
        return out

    def search(clauses: list[list[int]]) -> bool:
        forced: list[int] = []
        while True:
            unit = next((c[0] for c in clauses if len(c) == 1), None)
            if unit is None:
                break
            stats.propagations += 1
            assign[abs(unit)] = unit > 0
            forced.append(abs(unit))
            clauses = simplify(clauses, unit)
            if clauses is None:
                stats.conflicts += 1
                for v in forced:
                    del assign[v]
                return False
        if not clauses:
            return True
        branch_var = min(abs(l) for c in clauses for l in c)
        stats.decisions += 1
        for val in (True, False):
            assign[branch_var] = val
            reduced = simplify(clauses, branch_var if val else -branch_var)
            if reduced is None:
                stats.conflicts += 1
            elif search(reduced):
                return True
            del assign[branch_var]
        for v in forced:
            del assign[v]
        return False

    start = [list(c.lits) for c in cnf.clauses]
    if any(not c for c in start):
        return None
    if not search(start):
        return None
    return tuple(1 if assign.get(v) else 0 for v in range(1, cnf.num_vars + 1))


def row_constraint_clauses(row: Row012 | Row012e) -> list[tuple[int, ...]]:
    """The row as clauses: one unit per fixed slot, one clause per bubble."""
    out: list[tuple[int, ...]] = []
    if isinstance(row, Row012):
        for var in range(1, row.width + 1):
            v = row.value(var)
            if v == ONE:
                out.append((var,))
            elif v == ZERO:
                out.append((-var,))
        return out
    for var in range(1, row.width + 1):
        v = row.slots[2 * (var - 1)]
        if v == ONE:
            out.append((var,))
        elif v == ZERO:
            out.append((-var,))
    for members in row.bubbles:
        out.append(tuple(_slot_lit(s) for s in members))
    return out


def _slot_lit(slot: int) -> int:
    var = slot // 2 + 1
    return var if slot % 2 == 0 else -var


def augment_cnf(cnf: Cnf, row: Row012 | Row012e) -> Cnf:
    extra = tuple(Clause(c) for c in row_constraint_clauses(row))
    return Cnf(cnf.num_vars, cnf.clauses + extra)


def find_model(row: Row012 | Row012e, cnf: Cnf, solver: SolverFn = dpll_sat) -> tuple[int, ...] | None:
    """A model of the formula inside the row, or None."""
    if row.width != cnf.num_vars:
        raise ValueError("row width does not match num_vars")
    return solver(augment_cnf(cnf, row))


def feasible_solver(row: Row012 | Row012e, cnf: Cnf, solver: SolverFn = dpll_sat) -> Verdict:
    """Perfect feasibility: is some member of the row a model?"""
    return Verdict(find_model(row, cnf, solver) is not None, perfect=True)


def clause_dead_in(row: Row012 | Row012e, clause: Clause) -> bool:
    """True when every literal of the clause is falsified by the row's fixed
    values, so no member of the row can satisfy it."""
    if isinstance(row, Row012):
        for lit in clause.lits:
            v = row.value(abs(lit))
            if v == TWO or v == (1 if lit > 0 else 0):
                return False
        return True
    for lit in clause.lits:
        if row.slots[slot_of_lit(lit)] != ZERO:
            return False
    return True


def row_satisfies_clause(row: Row012 | Row012e, clause: Clause) -> bool:
    """True when every member of the row satisfies the clause.

    For 012-rows this means some literal is already fixed true.  For e-rows
    a bubble entirely inside the clause's literal slots also settles it,
    since some slot of the bubble carries a 1.
    """
    if isinstance(row, Row012):
        for lit in clause.lits:
            if row.value(abs(lit)) == (1 if lit > 0 else 0):
                return True
        return False
    cslots = {slot_of_lit(l) for l in clause.lits}
    if any(row.slots[s] == ONE for s in cslots):
        return True
    return any(set(m) <= cslots for m in row.bubbles)


def test1(row: Row012 | Row012e, cnf: Cnf) -> Verdict:
    """No iff some clause has all its literals falsified by the row.

    Weak in general; perfect when the formula is positive, because setting
    every non-zero position to 1 then witnesses feasibility.
    """
    perfect = cnf.is_positive()
    for clause in cnf.clauses:
        if clause_dead_in(row, clause):
            return Verdict(False, perfect)
    return Verdict(True, perfect)


def test2(row: Row012, cnf: Cnf) -> Verdict:
    """Pair test: clauses Ci, Cj sharing a variable p positively/negatively
    whose remaining literals are all falsified force p to 1 and 0 at once."""
    zeros, ones = row.zeros(), row.ones()
    clauses = cnf.clauses
    for i, ci in enumerate(clauses):
        for j, cj in enumerate(clauses):
            if i == j:
                continue
            for p in ci.pos & cj.neg:
                if (ci.pos - {p}) | cj.pos <= zeros and (cj.neg - {p}) | ci.neg <= ones:
                    return Verdict(False, perfect=False)
    return Verdict(True, perfect=False)


def final_012(row: Row012, cnf: Cnf) -> bool:
    """Perfect containment test: every clause holds on the whole row."""
    return all(row_satisfies_clause(row, c) for c in cnf.clauses)


def final_e(row: Row012e, cnf: Cnf) -> bool:
    """Containment test for e-rows via the per-clause rule of
    row_satisfies_clause.

    Sound always: a true answer really means the row is contained.  Exact on
    purified rows.  A row with bad pairs can be contained without the rule
    seeing it (two bubbles may force a clause jointly); the enumeration then
    simply splits such a row once more, so only compression is affected.
    """
    return all(row_satisfies_clause(row, c) for c in cnf.clauses)


def k_feasible(row: Row012, cnf: Cnf, k: int, stats: SolverStats | None = None) -> Verdict:
    """Perfect test for a model of cardinality exactly k inside the row."""
    return Verdict(find_k_model(row, cnf, k, stats) is not None, perfect=True)


def find_k_model(
    row: Row012, cnf: Cnf, k: int, stats: SolverStats | None = None
) -> tuple[int, ...] | None:
    """Branch-and-bound DPLL tracking the remaining budget of 1s."""
    if k < 0 or k > row.width:
        return None
    if stats is None:
        stats = SolverStats()
    w = row.width
    assign: dict[int, bool] = {}

    def simplify(clauses: list[list[int]], lit: int) -> list[list[int]] | None:
        out = []
        for c in clauses:
            if lit in c:
                continue
            if -lit in c:
                c = [x for x in c if x != -lit]
                if not c:
                    return None
            out.append(c)
        return out

    def ones_count() -> int:
        return sum(1 for v in assign.values() if v)

    def search(clauses: list[list[int]]) -> bool:
        forced: list[int] = []
        while True:
            o = ones_count()
            if o > k or o + (w - len(assign)) < k:
                for v in forced:
                    del assign[v]
                return False
            unit = next((c[0] for c in clauses if len(c) == 1), None)
            if unit is None:
                break
            stats.propagations += 1
            assign[abs(unit)] = unit > 0
            forced.append(abs(unit))
            clauses = simplify(clauses, unit)
            if clauses is None:
                stats.conflicts += 1
                for v in forced:
                    del assign[v]
                return False
        if not clauses:
            return True  # bounds above guarantee k is reachable
        branch_var = min(abs(l) for c in clauses for l in c)
        stats.decisions += 1
        for val in (True, False):
            assign[branch_var] = val
            reduced = simplify(clauses, branch_var if val else -branch_var)
            if reduced is None:
                stats.conflicts += 1
            elif search(reduced):
                return True
            del assign[branch_var]
        for v in forced:
            del assign[v]
        return False

    clauses = [list(c.lits) for c in cnf.clauses]
    try:
        for unit in row_constraint_clauses(row):
            lit = unit[0]
            if abs(lit) in assign:
                if assign[abs(lit)] != (lit > 0):
                    return None
                continue
            assign[abs(lit)] = lit > 0
            clauses = simplify(clauses, lit)
            if clauses is None:
                return None
    except IndexError:  # pragma: no cover - rows yield unit constraints only
        raise
    if not search(clauses):
        return None
    u = [1 if assign.get(v) else 0 for v in range(1, w + 1)]
    need = k - sum(u)
    if need < 0:
        return None
    for v in range(1, w + 1):
        if need == 0:
            break
        if v not in assign:
            u[v - 1] = 1
            need -= 1
    if need != 0:
        return None
    return tuple(u)


def prob_final(w: int, gamma: float, h: int, lam: int) -> float:
    """Probability that a random row with gamma don't-cares is final for a
    random CNF with h clauses of length lam: [1 - 0.5^((lam/w)(w-gamma))]^h."""
    if w == 0:
        raise ZeroDivisionError("prob_final undefined for w = 0")
    if not 0 <= gamma <= w:
        raise ValueError("gamma must lie in [0, w]")
    if not 0 <= lam <= w:
        raise ValueError("lambda must lie in [0, w]")
    base = 1.0 - 0.5 ** ((lam / w) * (w - gamma))
    return base ** h
