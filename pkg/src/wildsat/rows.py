"""Wildcard row algebra: 012-rows, 012e-rows, row lists and their operations.

A 012-row is a ternary vector over {0, 1, 2} of length w; the symbol 2 is a
don't-care, so the row denotes a subcube (interval) of {0,1}^w.

A 012e-row refines this with bubbles.  It is indexed by the 2w literal slots
x1, ~x1, ..., xw, ~xw.  A bubble is a labelled group of slots meaning "at
least one of these slots takes the value 1".  A slot holding 1 asserts its
literal (for the slot of ~x3, that means x3 = 0); fixing a slot always fixes
its complement slot to the opposite value.  Slots of one variable are either
(1,0), (0,1), both free, or free/bubbled in any combination, but never fixed
inconsistently.

Rows are immutable values.  Mutation happens inside a private builder which
maintains the slot/bubble invariants and performs the cascades triggered by
pinning a slot: a 1 inside a bubble releases the rest of the bubble to
don't-cares, a 0 shrinks the bubble, and a bubble shrunk to a single slot
forces that slot to 1 (which may cascade further through complement slots).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

ZERO, ONE, TWO = 0, 1, 2
_B = 3  # slot values >= _B reference bubble number (value - _B)


class EmptyRowError(Exception):
    """Raised when pinned constraints contradict: the row denotes no bitstring."""


class PurityError(ValueError):
    """Raised when an operation that requires a purified row gets an unpurified one."""


def pos_slot(var: int) -> int:
    return 2 * (var - 1)


def neg_slot(var: int) -> int:
    return 2 * (var - 1) + 1


def slot_of_lit(lit: int) -> int:
    return pos_slot(lit) if lit > 0 else neg_slot(-lit)


def slot_var(slot: int) -> int:
    return slot // 2 + 1


def slot_mate(slot: int) -> int:
    return slot ^ 1


def slot_is_positive(slot: int) -> bool:
    return slot % 2 == 0


# ---------------------------------------------------------------------------
# 012-rows


@dataclass(frozen=True)
class Row012:
    """A subcube of {0,1}^w given by one symbol 0/1/2 per variable."""

    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s not in (ZERO, ONE, TWO) for s in self.symbols):
            raise ValueError("row symbols must be 0, 1 or 2")

    @classmethod
    def full(cls, width: int) -> "Row012":
        return cls((TWO,) * width)

    @property
    def width(self) -> int:
        return len(self.symbols)

    def value(self, var: int) -> int:
        return self.symbols[var - 1]

    def zeros(self) -> frozenset[int]:
        return frozenset(i + 1 for i, s in enumerate(self.symbols) if s == ZERO)

    def ones(self) -> frozenset[int]:
        return frozenset(i + 1 for i, s in enumerate(self.symbols) if s == ONE)

    def twos(self) -> frozenset[int]:
        return frozenset(i + 1 for i, s in enumerate(self.symbols) if s == TWO)

    @property
    def free_count(self) -> int:
        return sum(1 for s in self.symbols if s == TWO)

    def with_value(self, var: int, value: int) -> "Row012":
        symbols = list(self.symbols)
        symbols[var - 1] = value
        return Row012(tuple(symbols))

    def contains(self, u: Sequence[int]) -> bool:
        if len(u) != self.width:
            raise ValueError("bitstring length does not match row width")
        return all(s == TWO or s == b for s, b in zip(self.symbols, u))

    def members(self) -> Iterator[tuple[int, ...]]:
        """All bitstrings of the subcube, in lexicographic order."""
        free = [i for i, s in enumerate(self.symbols) if s == TWO]
        base = list(self.symbols)
        for bits in itertools.product((0, 1), repeat=len(free)):
            for i, b in zip(free, bits):
                base[i] = b
            yield tuple(base)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols)


def card_012(row: Row012) -> int:
    """Number of bitstrings in the subcube: 2 ** (number of don't-cares)."""
    return 1 << row.free_count


def intersect_012(a: Row012, b: Row012) -> Row012 | None:
    """Componentwise meet of two subcubes, or None when fixed values clash."""
    if a.width != b.width:
        raise ValueError("row widths differ")
    out = []
    for x, y in zip(a.symbols, b.symbols):
        if x == TWO:
            out.append(y)
        elif y == TWO or y == x:
            out.append(x)
        else:
            return None
    return Row012(tuple(out))


# ---------------------------------------------------------------------------
# 012e-rows


@dataclass(frozen=True)
class Row012e:
    """A row over the 2w literal slots, with don't-cares and e-bubbles.

    ``slots[s]`` is 0, 1, 2, or ``3 + k`` when slot ``s`` belongs to bubble
    ``k``.  Bubbles are canonical: each one is a sorted slot tuple of length
    at least two, and bubbles are numbered by their smallest slot, so equal
    rows compare equal regardless of construction history.
    """

    width: int
    slots: tuple[int, ...]
    bubbles: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if len(self.slots) != 2 * self.width:
            raise ValueError("slot vector must have length 2w")
        for k, members in enumerate(self.bubbles):
            if len(members) < 2:
                raise ValueError("bubbles must cover at least two slots")
            if tuple(sorted(members)) != members:
                raise ValueError("bubble slots must be sorted")
            vars_seen = [slot_var(s) for s in members]
            if len(set(vars_seen)) != len(vars_seen):
                raise ValueError("a bubble may not cover both slots of a variable")
            for s in members:
                if self.slots[s] != _B + k:
                    raise ValueError("slot/bubble tables disagree")
        for k in range(1, len(self.bubbles)):
            if self.bubbles[k - 1][0] > self.bubbles[k][0]:
                raise ValueError("bubbles must be ordered by first slot")
        for var in range(1, self.width + 1):
            a, b = self.slots[pos_slot(var)], self.slots[neg_slot(var)]
            fixed_a, fixed_b = a in (ZERO, ONE), b in (ZERO, ONE)
            if fixed_a != fixed_b or (fixed_a and a == b):
                raise ValueError(f"inconsistent slot pair for variable {var}")

    @classmethod
    def full(cls, width: int) -> "Row012e":
        return cls(width, (TWO,) * (2 * width))

    @classmethod
    def from_row012(cls, row: Row012) -> "Row012e":
        slots = []
        for s in row.symbols:
            if s == TWO:
                slots += [TWO, TWO]
            elif s == ONE:
                slots += [ONE, ZERO]
            else:
                slots += [ZERO, ONE]
        return cls(row.width, tuple(slots))

    def value(self, slot: int) -> int:
        return self.slots[slot]

    def bubble_of(self, slot: int) -> int | None:
        v = self.slots[slot]
        return v - _B if v >= _B else None

    def var_value(self, var: int) -> int:
        """0/1 when the variable is fixed, 2 otherwise (free or bubbled)."""
        a = self.slots[pos_slot(var)]
        if a == ONE:
            return 1
        if a == ZERO:
            return 0
        return 2

    def bad_pairs(self) -> tuple[int, ...]:
        """Variables whose two slots are covered by distinct bubbles."""
        out = []
        for var in range(1, self.width + 1):
            a, b = self.slots[pos_slot(var)], self.slots[neg_slot(var)]
            if a >= _B and b >= _B:
                out.append(var)
        return tuple(out)

    def is_purified(self) -> bool:
        return not self.bad_pairs()

    @property
    def free_count(self) -> int:
        """Number of variables with both slots at don't-care."""
        return sum(
            1
            for var in range(1, self.width + 1)
            if self.slots[pos_slot(var)] == TWO and self.slots[neg_slot(var)] == TWO
        )

    def condense(self) -> Row012:
        """Project a bubble-free row onto the w variable positions."""
        if self.bubbles:
            raise ValueError("cannot condense a row that still has bubbles")
        return Row012(tuple(self.var_value(v) for v in range(1, self.width + 1)))

    def contains(self, u: Sequence[int]) -> bool:
        if len(u) != self.width:
            raise ValueError("bitstring length does not match row width")
        for var in range(1, self.width + 1):
            a = self.slots[pos_slot(var)]
            if a == ONE and u[var - 1] != 1:
                return False
            if a == ZERO and u[var - 1] != 0:
                return False
        for members in self.bubbles:
            if not any(u[slot_var(s) - 1] == (1 if slot_is_positive(s) else 0) for s in members):
                return False
        return True

    def members(self) -> Iterator[tuple[int, ...]]:
        for piece in purify(self):
            for cube in expand_to_012(piece):
                yield from cube.members()

    def __str__(self) -> str:
        toks = []
        for s, v in enumerate(self.slots):
            toks.append(f"e{v - _B + 1}" if v >= _B else str(v))
        return " ".join(toks)


class _EBuilder:
    """Mutable scratch representation of a 012e-row."""

    __slots__ = ("width", "slots", "groups", "_next")

    def __init__(self, width: int):
        self.width = width
        self.slots: list[int] = [TWO] * (2 * width)
        self.groups: dict[int, set[int]] = {}
        self._next = 0

    @classmethod
    def from_row(cls, row: Row012e) -> "_EBuilder":
        b = cls(row.width)
        b.slots = list(row.slots)
        b.groups = {k: set(m) for k, m in enumerate(row.bubbles)}
        b._next = len(row.bubbles)
        return b

    def value(self, slot: int) -> int:
        return self.slots[slot]

    def set_fixed(self, slot: int, value: int) -> None:
        """Pin a slot to 0 or 1, cascading through bubbles and complements."""
        cur = self.slots[slot]
        if cur == value:
            return
        if cur in (ZERO, ONE):
            raise EmptyRowError(f"slot {slot} already fixed to {cur}")
        pending = None
        if cur >= _B:
            gid = cur - _B
            members = self.groups[gid]
            members.discard(slot)
            if value == ONE:
                # bubble satisfied: remaining slots become free
                for m in members:
                    self.slots[m] = TWO
                del self.groups[gid]
            else:
                if not members:
                    del self.groups[gid]
                    raise EmptyRowError("all slots of a bubble pinned to 0")
                if len(members) == 1:
                    pending = next(iter(members))
        self.slots[slot] = value
        self.set_fixed(slot_mate(slot), 1 - value)
        if pending is not None and self.slots[pending] >= _B:
            # length-1 bubble remnant: its slot must carry the 1
            self.set_fixed(pending, ONE)

    def new_bubble(self, slots: Iterable[int]) -> None:
        members = sorted(set(slots))
        if any(self.slots[s] != TWO for s in members):
            raise ValueError("new bubble slots must currently be free")
        if len({slot_var(s) for s in members}) != len(members):
            return  # covers a complementary pair: "at least one 1" holds anyway
        if not members:
            raise ValueError("empty bubble")
        if len(members) == 1:
            self.set_fixed(members[0], ONE)
            return
        gid = self._next
        self._next += 1
        self.groups[gid] = set(members)
        for s in members:
            self.slots[s] = _B + gid

    def shrink_to(self, member_slot: int, keep: Iterable[int]) -> None:
        """Restrict the bubble containing member_slot to ``keep``, freeing the rest."""
        gid = self.slots[member_slot] - _B
        members = self.groups[gid]
        keep = set(keep)
        for m in members - keep:
            self.slots[m] = TWO
        members &= keep
        if len(members) == 1:
            lone = next(iter(members))
            self.set_fixed(lone, ONE)

    def freeze(self) -> Row012e:
        order = sorted(self.groups.values(), key=min)
        slots = list(self.slots)
        bubbles = []
        for k, members in enumerate(order):
            ms = tuple(sorted(members))
            bubbles.append(ms)
            for m in ms:
                slots[m] = _B + k
        return Row012e(self.width, tuple(slots), tuple(bubbles))


def card_purified(row: Row012e) -> int:
    """Cardinality of a purified row: product of (2^len - 1) over bubbles
    times 2^(free variables)."""
    bad = row.bad_pairs()
    if bad:
        raise PurityError(f"row has bad pairs at variables {bad}")
    n = 1 << row.free_count
    for members in row.bubbles:
        n *= (1 << len(members)) - 1
    return n


def card_e(row: Row012e) -> int:
    """Cardinality of an arbitrary 012e-row (purifies internally)."""
    return sum(card_purified(piece) for piece in purify(row))


def contains(row: Row012 | Row012e, u: Sequence[int]) -> bool:
    return row.contains(u)


def purify(row: Row012e) -> list[Row012e]:
    """Split a row into disjoint purified rows covering the same bitstrings.

    Every bad pair is instantiated both ways (value 1 first); instantiations
    whose cascades contradict are dropped.  At least one row survives.
    """
    bad = row.bad_pairs()
    if not bad:
        return [row]
    out = []
    for values in itertools.product((1, 0), repeat=len(bad)):
        b = _EBuilder.from_row(row)
        try:
            for var, v in zip(bad, values):
                b.set_fixed(pos_slot(var), v)
        except EmptyRowError:
            continue
        out.append(b.freeze())
    assert out, "purification of a nonempty row produced nothing"
    return out


def pick_model(row: Row012e) -> tuple[int, ...]:
    """A canonical member of a purified row: every bubble slot asserts its
    literal, free variables go to 0."""
    if not row.is_purified():
        raise PurityError("pick_model requires a purified row")
    u = [0] * row.width
    for var in range(1, row.width + 1):
        if row.slots[pos_slot(var)] == ONE:
            u[var - 1] = 1
    for members in row.bubbles:
        for s in members:
            u[slot_var(s) - 1] = 1 if slot_is_positive(s) else 0
    return tuple(u)


def expand_to_012(row: Row012e) -> list[Row012]:
    """Multiply out the bubbles of a purified row into plain 012-rows.

    Each bubble of length n contributes the n-line triangular staircase
    (first slot 1; first 0 and second 1; and so on), so the output has
    exactly the product of the bubble lengths many rows.
    """
    if not row.is_purified():
        raise PurityError("expand_to_012 requires a purified row")
    if not row.bubbles:
        return [row.condense()]
    out = []
    ranges = [range(len(m)) for m in row.bubbles]
    for choice in itertools.product(*ranges):
        b = _EBuilder.from_row(row)
        for members, j in zip(row.bubbles, choice):
            ms = sorted(members)
            # release the bubble, then re-pin the staircase pattern
            gid = b.slots[ms[0]] - _B
            for m in b.groups[gid]:
                b.slots[m] = TWO
            del b.groups[gid]
            for s in ms[:j]:
                b.set_fixed(s, ZERO)
            b.set_fixed(ms[j], ONE)
        out.append(b.freeze().condense())
    return out


# ---------------------------------------------------------------------------
# Imposing "at least one of these slots is 1" on a row

def row_hits_slots(row: Row012e, slots: Sequence[int]) -> bool:
    """True when every member of the row sets some listed slot to 1."""
    sset = set(slots)
    if any(row.slots[s] == ONE for s in sset):
        return True
    return any(set(m) <= sset for m in row.bubbles)


def impose_on_slots(row: Row012e, slots: Sequence[int]) -> list[Row012e]:
    """Partition {u in row : u sets some listed slot to 1} into disjoint rows.

    Proceeds like the triangular clause staircase, one column at a time, in
    the given slot order.  A column is either the group of all currently
    free listed slots (they become one fresh bubble) or an existing bubble
    overlapping the listed slots (it shrinks to the overlap, releasing its
    other slots).  Before the next column, the previous column's slots are
    pinned to 0.  Rows that already hit the slots are returned unchanged.
    An empty result means no member hits the slots.
    """
    sons: list[Row012e] = []
    current: Row012e | None = row
    while current is not None:
        if row_hits_slots(current, slots):
            sons.append(current)
            break
        first = next(
            (s for s in slots if current.slots[s] == TWO or current.slots[s] >= _B),
            None,
        )
        if first is None:
            break  # every listed slot is 0: remainder has no hitting member
        if current.slots[first] == TWO:
            column = [s for s in slots if current.slots[s] == TWO]
            try:
                b = _EBuilder.from_row(current)
                b.new_bubble(column)
                sons.append(b.freeze())
            except EmptyRowError:
                pass
        else:
            members = current.bubbles[current.slots[first] - _B]
            column = [s for s in members if s in set(slots)]
            try:
                b = _EBuilder.from_row(current)
                b.shrink_to(first, column)
                sons.append(b.freeze())
            except EmptyRowError:
                pass
        try:
            b = _EBuilder.from_row(current)
            for s in column:
                b.set_fixed(s, ZERO)
            current = b.freeze()
        except EmptyRowError:
            current = None
    return sons


def intersect_e(r: Row012e, rho: Row012e) -> list[Row012e]:
    """Intersection of two 012e-rows as a list of disjoint 012e-rows.

    The operand with fewer bubbles is imposed onto the other: first its fixed
    slots, then each of its bubbles via impose_on_slots.
    """
    if r.width != rho.width:
        raise ValueError("row widths differ")
    carrier, imposed = (r, rho) if len(r.bubbles) >= len(rho.bubbles) else (rho, r)
    try:
        b = _EBuilder.from_row(carrier)
        for s, v in enumerate(imposed.slots):
            if v in (ZERO, ONE):
                b.set_fixed(s, v)
        work = [b.freeze()]
    except EmptyRowError:
        return []
    for members in imposed.bubbles:
        nxt: list[Row012e] = []
        for row in work:
            nxt.extend(impose_on_slots(row, list(members)))
        work = nxt
        if not work:
            break
    return work


def intersection_card_ie(r: Row012e, rho: Row012e) -> int:
    """Cardinality of the intersection by inclusion-exclusion over rho's bubbles.

    Each term pins a subset of rho's bubbles entirely to 0 inside r (after
    applying rho's fixed slots) and takes the purified-row cardinality.
    """
    if not r.is_purified() or not rho.is_purified():
        raise PurityError("intersection_card_ie requires purified rows")
    if r.width != rho.width:
        raise ValueError("row widths differ")
    try:
        base = _EBuilder.from_row(r)
        for s, v in enumerate(rho.slots):
            if v in (ZERO, ONE):
                base.set_fixed(s, v)
        base_row = base.freeze()
    except EmptyRowError:
        return 0
    total = 0
    n = len(rho.bubbles)
    for bits in itertools.product((0, 1), repeat=n):
        sign = -1 if sum(bits) % 2 else 1
        try:
            b = _EBuilder.from_row(base_row)
            for members, violate in zip(rho.bubbles, bits):
                if violate:
                    for s in members:
                        b.set_fixed(s, ZERO)
            total += sign * card_purified(b.freeze())
        except EmptyRowError:
            continue
    return total


# ---------------------------------------------------------------------------
# Row lists


@dataclass
class RunStats:
    """Machine-readable statistics of one enumeration run."""

    method: str = ""
    policy: str = ""
    rows: int = 0
    models: int = 0
    gamma_avg: float = 0.0
    time_s: float = 0.0
    harmful_deletions: int = 0
    weight_pruned: int = 0
    weight_discards: int = 0
    solver_calls: int = 0


@dataclass(frozen=True)
class RowList:
    """An ordered, pairwise-disjoint collection of rows over one width."""

    width: int
    rows: tuple = ()
    stats: RunStats | None = None

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def total_models(self) -> int:
        n = 0
        for row in self.rows:
            n += card_012(row) if isinstance(row, Row012) else card_e(row)
        return n

    def gamma_avg(self) -> float:
        """Mean number of free variables per row (don't-care pairs for e-rows)."""
        if not self.rows:
            return 0.0
        return sum(row.free_count for row in self.rows) / len(self.rows)


def member_complement(rows: RowList) -> RowList:
    """Swap fixed 0s and 1s in every row; don't-cares are untouched.

    Maps an enumeration of a model set to one of its member-wise complement
    (every member bitwise flipped).
    """
    flipped = []
    for row in rows.rows:
        if not isinstance(row, Row012):
            raise TypeError("member_complement is defined on 012-rows")
        flipped.append(
            Row012(tuple(1 - s if s != TWO else TWO for s in row.symbols))
        )
    return RowList(rows.width, tuple(flipped))


# ---------------------------------------------------------------------------
# Row list text format
#
# One row per line, w whitespace-separated tokens: 0, 1, 2, eK (bubble K on
# the positive slot) or nK (bubble K on the negative slot).  Bubble numbers
# are per row.  A header line "rows w=<w> n=<count>" precedes the rows.


def format_rows(rows: RowList) -> str:
    lines = [f"rows w={rows.width} n={len(rows.rows)}"]
    for row in rows.rows:
        if isinstance(row, Row012):
            lines.append(" ".join(str(s) for s in row.symbols))
            continue
        if not row.is_purified():
            raise PurityError("serialize purified rows only (purify first)")
        toks = []
        for var in range(1, row.width + 1):
            a, b = row.slots[pos_slot(var)], row.slots[neg_slot(var)]
            if a == ONE:
                toks.append("1")
            elif a == ZERO:
                toks.append("0")
            elif a >= _B:
                toks.append(f"e{a - _B + 1}")
            elif b >= _B:
                toks.append(f"n{b - _B + 1}")
            else:
                toks.append("2")
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def parse_rows(text: str) -> RowList:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("rows "):
        raise ValueError("missing 'rows w=<w> n=<n>' header")
    fields = dict(part.split("=") for part in lines[0].split()[1:])
    width, count = int(fields["w"]), int(fields["n"])
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != width:
            raise ValueError(f"expected {width} tokens per row, got {len(toks)}")
        if all(t in ("0", "1", "2") for t in toks):
            rows.append(Row012(tuple(int(t) for t in toks)))
            continue
        b = _EBuilder(width)
        groups: dict[str, list[int]] = {}
        for var, t in enumerate(toks, start=1):
            if t in ("0", "1"):
                b.set_fixed(pos_slot(var), int(t))
            elif t == "2":
                pass
            elif t[0] in ("e", "n"):
                slot = pos_slot(var) if t[0] == "e" else neg_slot(var)
                groups.setdefault(t[1:], []).append(slot)
            else:
                raise ValueError(f"bad row token {t!r}")
        for _, slots in sorted(groups.items()):
            b.new_bubble(slots)
        rows.append(b.freeze())
    if len(rows) != count:
        raise ValueError(f"header announced {count} rows, found {len(rows)}")
    return RowList(width, tuple(rows))
