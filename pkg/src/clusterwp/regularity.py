"""Point analysis and local regularization of the chart form.

A point is a partial assignment of exact Gaussian-rational values to
generator names, checked and extended through the exchange relations of a
presentation or exploration.  Where chart variables vanish, the chart form's
written denominators blow up; the rewriting implemented here replaces each
singular row by an expression whose denominators avoid the vanishing set,
whenever no two vanishing variables are exchange-adjacent.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from .exact import (
    ExactMatrix,
    GaussianParseError,
    GaussianRational,
    parse_gaussian,
    rank,
)
from .forms import SymbolicForm, wp_form
from .laurent import LaurentPoly, RationalFn, VarTable, _IDENT_RE
from .seeds import (
    Exploration,
    NotFoundWithinBudget,
    Presentation,
    Seed,
    _exchange_binomial,
    prime_toggle,
)


class HypothesisViolated(Exception):
    """Two vanishing variables are exchange-adjacent; names the pair."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"vanishing variables {pair[0]} and {pair[1]} are "
                         f"exchange-adjacent (B entry nonzero)")


class NoForcedSuccessor(RuntimeError):
    """A vanishing index has no positive exchange entry into the vanishing
    set — the pattern cannot come from an actual point."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"no successor with positive exchange entry from "
                         f"index {index}")


@dataclass(frozen=True)
class AlgebraPoint:
    """Partial assignment name -> GaussianRational with an optional relation
    context (Presentation or Exploration)."""

    assignment: dict
    context: object = None

    def __post_init__(self):
        coerced = {name: GaussianRational.of(v) for name, v in
                   self.assignment.items()}
        object.__setattr__(self, "assignment", coerced)

    def value(self, name):
        return self.assignment.get(name)


def _context_frozen_names(context):
    if isinstance(context, Presentation):
        return context.frozen_names
    first = context.seeds[0]
    return first.names[first.matrix.m:]


def _pos_neg_value(factors, assignment):
    """Evaluate a (name, exponent) monomial list, or None if unassigned."""
    total = GaussianRational.of(1)
    for name, exp in factors:
        v = assignment.get(name)
        if v is None:
            return None
        total = total * v ** exp
    return total


def _factor_text(factors):
    if not factors:
        return "1"
    return "*".join(nm if e == 1 else f"{nm}^{e}" for nm, e in factors)


def _relation_text(rel):
    partner = rel.partner if rel.partner is not None else "?"
    return (f"{rel.var}*{partner} = "
            f"{_factor_text(rel.pos)} + {_factor_text(rel.neg)}")


def verify_point(point):
    """All violated, fully-evaluable constraints of the point's context:
    exchange relations that fail to hold and frozen variables assigned zero.
    Empty list means valid."""
    if point.context is None:
        raise ValueError("point has no relation context to verify against")
    issues = []
    a = point.assignment
    for name in _context_frozen_names(point.context):
        v = a.get(name)
        if v is not None and not v:
            issues.append(f"frozen variable {name} must be nonzero")
    if isinstance(point.context, Presentation):
        for rel in point.context.relations:
            if not rel.variables_used() <= set(a):
                continue
            value = rel.evaluate(a)
            if value:
                issues.append(f"{rel.to_expr()} = {value}")
    else:
        for rel in point.context.relations():
            if rel.partner is None or rel.var not in a or rel.partner not in a:
                continue
            rhs_pos = _pos_neg_value(rel.pos, a)
            rhs_neg = _pos_neg_value(rel.neg, a)
            if rhs_pos is None or rhs_neg is None:
                continue
            lhs = a[rel.var] * a[rel.partner]
            if lhs != rhs_pos + rhs_neg:
                issues.append(f"{_relation_text(rel)} violated: "
                              f"{lhs} != {rhs_pos + rhs_neg}")
    return issues


def propagate_point(point, exploration):
    """Extend the assignment through the exchange relations to a fixpoint.

    A relation f*f' = P with f assigned nonzero and P evaluable determines
    f' = P/f; with f = 0 it only demands P = 0.  Returns the extended point
    and a list of inconsistencies (conflicting or violated relations)."""
    a = dict(point.assignment)
    issues = []
    reported = set()

    def report(key, text):
        if key not in reported:
            reported.add(key)
            issues.append(text)

    rels = exploration.relations()
    changed = True
    while changed:
        changed = False
        for rel in rels:
            fv = a.get(rel.var)
            if fv is None:
                continue
            rhs_pos = _pos_neg_value(rel.pos, a)
            rhs_neg = _pos_neg_value(rel.neg, a)
            if rhs_pos is None or rhs_neg is None:
                continue
            rhs = rhs_pos + rhs_neg
            if not fv:
                if rhs:
                    report(("zero", rel.seed_index, rel.direction),
                           f"{rel.var} = 0 but {_relation_text(rel)} "
                           f"gives product {rhs}")
                continue
            if rel.partner is None:
                continue
            val = rhs * fv.inverse()
            cur = a.get(rel.partner)
            if cur is None:
                a[rel.partner] = val
                changed = True
            elif cur != val:
                report(("conflict", rel.partner),
                       f"{rel.partner} = {cur} conflicts with "
                       f"{_relation_text(rel)} giving {val}")
    return AlgebraPoint(a, exploration), issues


@dataclass(frozen=True)
class VanishingPattern:
    """Mutable chart indices whose variables vanish at a point."""

    seed: Seed
    indices: frozenset

    def __post_init__(self):
        m = self.seed.matrix.m
        for i in self.indices:
            if not (1 <= i <= self.seed.matrix.n):
                raise ValueError(f"index {i} outside 1..{self.seed.matrix.n}")
            if i > m:
                raise ValueError(
                    f"index {i} is frozen; frozen variables are invertible "
                    f"and cannot vanish")

    def names(self):
        return tuple(self.seed.names[i - 1] for i in sorted(self.indices))


def vanishing_pattern(point, seed):
    """Vanishing set of a seed's chart at a fully-assigned point."""
    indices = set()
    for i, name in enumerate(seed.names, 1):
        v = point.assignment.get(name)
        if v is None:
            raise ValueError(f"chart variable {name} is not assigned")
        if not v:
            if i > seed.matrix.m:
                raise ValueError(f"frozen variable {name} vanishes; "
                                 f"not a point of the algebra")
            indices.add(i)
    return VanishingPattern(seed, frozenset(indices))


def adjacent_vanishing_pair(pattern):
    """Smallest pair a < b in the pattern with B_ab != 0, or None.  None is
    the hypothesis of the local regularization lemma."""
    idx = sorted(pattern.indices)
    b_entry = pattern.seed.matrix.b
    for pos, a in enumerate(idx):
        for b in idx[pos + 1:]:
            if b_entry(a, b) != 0:
                return (a, b)
    return None


def trace_vanishing_cycle(pattern, a, b):
    """Follow forced positive exchange entries inside the vanishing set until
    an index repeats; returns the directed cycle.

    Requires a, b in the pattern with B_ab > 0 (swap the arguments if the
    entry is negative)."""
    mat = pattern.seed.matrix
    if a not in pattern.indices or b not in pattern.indices:
        raise ValueError(f"{a} and {b} must both be in the vanishing set")
    if mat.b(a, b) <= 0:
        raise ValueError(f"need B_{a}{b} > 0, got {mat.b(a, b)}; "
                         f"swap the start pair")
    walk = [a, b]
    while True:
        current = walk[-1]
        successor = None
        for c in sorted(pattern.indices):
            if c != current and mat.b(current, c) > 0:
                successor = c
                break
        if successor is None:
            raise NoForcedSuccessor(current)
        if successor in walk:
            return tuple(walk[walk.index(successor):])
        walk.append(successor)


def _negative_support(poly):
    names = set()
    for exps in poly.terms:
        for name, e in zip(poly.table.names, exps):
            if e < 0:
                names.add(name)
    return names


def regularize_at(seed, pattern, namer=None):
    """Rewrite the chart form so no written denominator meets the vanishing
    set.

    Each vanishing row i is replaced, via the exchange relation
    f_i f_i' = P_i, by

        [prod_{B_ij>0} f_j^{-B_ij}] * (df_i∧df_i' +
            f_i' * sum_{B_ij<0} B_ij df_i∧df_j / f_j),

    introducing the once-mutated generator f_i'.  Non-singular terms are kept
    verbatim.  Raises HypothesisViolated when two vanishing indices are
    exchange-adjacent."""
    if pattern.seed != seed:
        raise ValueError("pattern was built over a different seed")
    pair = adjacent_vanishing_pair(pattern)
    if pair is not None:
        raise HypothesisViolated(pair)
    mat = seed.matrix
    v_sorted = sorted(pattern.indices)
    # the singular rows must match their column counterparts exactly for the
    # row-by-row replacement to account for every stored term
    for i in v_sorted:
        for j in range(1, mat.m + 1):
            if j != i and mat.b(i, j) != 0 and mat.b(j, i) != -mat.b(i, j):
                raise ValueError(
                    f"rows meeting the vanishing set must be skew-symmetric "
                    f"with their columns; B_{i}{j} = {mat.b(i, j)} but "
                    f"B_{j}{i} = {mat.b(j, i)}")

    chart_table = VarTable(seed.names)
    chart_vars = [LaurentPoly.variable(chart_table, nm) for nm in seed.names]
    primes = {}
    extras = {}
    for i in v_sorted:
        pname = namer(seed, i) if namer is not None else prime_toggle(seed.names[i - 1])
        binomial = _exchange_binomial(mat.rows[i - 1], chart_vars, chart_table)
        extras[pname] = (binomial / chart_vars[i - 1]).as_laurent()
        primes[i] = pname

    sym_table = VarTable(seed.names + tuple(extras))
    var = {nm: LaurentPoly.variable(sym_table, nm) for nm in sym_table.names}
    terms = []
    for i in v_sorted:
        name_i = seed.names[i - 1]
        multiplier = LaurentPoly.constant(sym_table, 1)
        for j, b in enumerate(mat.rows[i - 1]):
            if b > 0:
                multiplier = multiplier * var[seed.names[j]] ** (-b)
        terms.append((RationalFn(multiplier), name_i, primes[i]))
        for j, b in enumerate(mat.rows[i - 1]):
            if b < 0:
                coeff = RationalFn(multiplier * var[primes[i]] * b,
                                   var[seed.names[j]])
                terms.append((coeff, name_i, seed.names[j]))
    vanishing = set(pattern.indices)
    for (a, b) in sorted(wp_form(seed).coeffs):
        if a in vanishing or b in vanishing:
            continue
        coeff = RationalFn(
            LaurentPoly.constant(sym_table, mat.b(a, b)),
            var[seed.names[a - 1]] * var[seed.names[b - 1]])
        terms.append((coeff, seed.names[a - 1], seed.names[b - 1]))

    form = SymbolicForm(seed, extras, terms)
    banned = set(pattern.names())
    for coeff, _, _ in form.terms:
        support = set(coeff.den.variables_used()) | _negative_support(coeff.num)
        if support & banned:      # pragma: no cover - identity guarantees this
            raise RuntimeError("regularization left a vanishing denominator")
    return form


def constant_vanishing_oracle(indices):
    """Oracle asserting the same chart indices vanish in every seed (valid
    when the point kills every cluster variable)."""
    wanted = frozenset(indices)
    return lambda seed: VanishingPattern(seed, wanted)


def point_vanishing_oracle(point):
    """Oracle reading each visited seed's vanishing set off the point.  The
    point must assign every chart variable the search encounters."""
    return lambda seed: vanishing_pattern(point, seed)


def find_regularizing_seed(start, v_oracle, max_depth=3, max_seeds=1000,
                           namer=None):
    """Breadth-first search of the mutation graph for a seed whose chart
    admits the regularizing rewrite for its oracle-supplied vanishing set."""
    seen = {start.cluster_key()}
    queue = deque([(start, 0)])
    examined = 0
    while queue:
        s, depth = queue.popleft()
        examined += 1
        try:
            return s, regularize_at(s, v_oracle(s), namer=namer)
        except HypothesisViolated:
            pass
        if examined >= max_seeds:
            break
        if depth == max_depth:
            continue
        for k in range(1, s.matrix.m + 1):
            t = s.mutated(k)
            key = t.cluster_key()
            if key not in seen:
                seen.add(key)
                queue.append((t, depth + 1))
    raise NotFoundWithinBudget(
        f"no regularizing seed within {max_seeds} seeds at depth <= {max_depth}")


def tangent_dimension(presentation, point):
    """Dimension of the Zariski tangent space at a valid, fully-assigned
    point: (number of generators) - rank(Jacobian of the relations)."""
    names = presentation.table.names
    missing = [nm for nm in names if nm not in point.assignment]
    if missing:
        raise ValueError(f"unassigned generator(s): {', '.join(missing)}")
    check = AlgebraPoint(point.assignment, presentation)
    issues = verify_point(check)
    if issues:
        raise ValueError(f"not a point of the algebra: {issues[0]}")
    a = point.assignment
    rows = []
    for rel in presentation.relations:
        rows.append(tuple(rel.partial(nm).evaluate(a) for nm in names))
    jac = ExactMatrix.from_rows(rows)
    return len(names) - rank(jac)


@dataclass(frozen=True)
class DeepWitnessReport:
    """Per-cluster avoidance statuses plus the overall verdict: deep,
    deep-relative (window truncated), not-deep, or inconclusive."""

    cluster_status: tuple
    verdict: str

    @property
    def certified(self):
        return self.verdict == "deep"

    @property
    def relative(self):
        return self.verdict == "deep-relative"


def deep_witness(point, exploration):
    """Classify every explored cluster against the point: a cluster is
    avoided when some member variable is determined zero; the point is deep
    (relative to the exploration when truncated) when every cluster is
    avoided."""
    statuses = []
    for s in exploration.seeds:
        values = [point.assignment.get(nm) for nm in s.names]
        if any(v is not None and not v for v in values):
            statuses.append("has-determined-zero")
        elif all(v is not None and v for v in values):
            statuses.append("all-determined-nonzero")
        else:
            statuses.append("undetermined")
    if "all-determined-nonzero" in statuses:
        verdict = "not-deep"
    elif "undetermined" in statuses:
        verdict = "inconclusive"
    elif exploration.truncated:
        verdict = "deep-relative"
    else:
        verdict = "deep"
    return DeepWitnessReport(tuple(statuses), verdict)


# ---------------------------------------------------------------------------
# point files
# ---------------------------------------------------------------------------

class PointFileError(ValueError):
    def __init__(self, filename, line, reason):
        self.filename = filename
        self.line = line
        self.reason = reason
        super().__init__(f"{filename}:{line}: {reason}")


def parse_point_file(text, filename="<input>"):
    """Parse lines ``<name> = <gaussian-rational-literal>`` into an
    assignment dict.  ``#`` starts a comment."""
    values = {}
    for no, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise PointFileError(filename, no,
                                 "expected '<name> = <value>'")
        name, _, literal = stripped.partition("=")
        name = name.strip()
        literal = literal.strip()
        if not _IDENT_RE.match(name) or name == "i":
            raise PointFileError(filename, no, f"bad variable name {name!r}")
        if name in values:
            raise PointFileError(filename, no, f"duplicate assignment to {name}")
        try:
            values[name] = parse_gaussian(literal)
        except GaussianParseError:
            raise PointFileError(
                filename, no,
                f"{literal!r} is not a Gaussian rational literal") from None
    return values
