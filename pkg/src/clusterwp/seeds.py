"""Seeds, matrix mutation, acyclic presentations, and chart exploration.

A seed is an ``m x n`` integer exchange matrix (rows indexed by the ``m``
mutable variables, columns by all ``n``) together with labelled cluster
variables.  Every variable carries its expansion as a Laurent polynomial in
the variables of the *initial* chart, so mutation is exact symbolic
arithmetic: the exchange binomial is divided by the replaced expansion and
the quotient must again be Laurent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm

from .laurent import LaurentPoly, NotLaurent, VarTable


class NotSkewSymmetrizable(ValueError):
    """No positive diagonal D with D*B skew-symmetric; names the bad pair."""

    def __init__(self, pair, reason):
        self.pair = pair
        super().__init__(f"rows {pair[0]},{pair[1]}: {reason}")


class NotAcyclic(ValueError):
    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__(
            "directed cycle among mutable indices: "
            + " -> ".join(str(k) for k in cycle)
        )


class NotFoundWithinBudget(RuntimeError):
    pass


class MutationArithmeticError(RuntimeError):
    """A mutation quotient failed to be Laurent (should never happen)."""


@dataclass(frozen=True)
class ExchangeMatrix:
    """Integer m x n exchange matrix; validated skew-symmetrizable on the
    mutable m x m block at construction."""

    m: int
    n: int
    rows: tuple

    def __post_init__(self):
        if not (1 <= self.m <= self.n):
            raise ValueError(f"need 1 <= mutable <= rank, got {self.m}, {self.n}")
        if len(self.rows) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(self.rows)}")
        for row in self.rows:
            if len(row) != self.n:
                raise ValueError(f"expected {self.n} entries per row, got {len(row)}")
            for x in row:
                if not isinstance(x, int):
                    raise ValueError(f"matrix entries must be integers, got {x!r}")
        find_skew_symmetrizer(self)

    def b(self, i, j):
        """Entry B_ij with 1-based indices (row i mutable, column j any)."""
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise IndexError(f"B_{i}{j} out of range for {self.m}x{self.n}")
        return self.rows[i - 1][j - 1]


def find_skew_symmetrizer(matrix):
    """Positive integers (d_1..d_m), gcd 1 per connected component, with
    d_i B_ij = -d_j B_ji on the mutable block.  Raises NotSkewSymmetrizable
    naming the offending index pair."""
    m, rows = matrix.m, matrix.rows
    for i in range(m):
        if rows[i][i] != 0:
            raise NotSkewSymmetrizable((i + 1, i + 1), "nonzero diagonal entry")
        for j in range(i + 1, m):
            a, b = rows[i][j], rows[j][i]
            if (a == 0) != (b == 0) or (a != 0 and a * b > 0):
                raise NotSkewSymmetrizable((i + 1, j + 1), "signs do not oppose")
    d = [None] * m
    for root in range(m):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        component = [root]
        stack = [root]
        while stack:
            u = stack.pop()
            for v in range(m):
                if v == u or rows[u][v] == 0:
                    continue
                ratio = d[u] * Fraction(abs(rows[u][v]), abs(rows[v][u]))
                if d[v] is None:
                    d[v] = ratio
                    component.append(v)
                    stack.append(v)
                elif d[v] != ratio:
                    pair = (min(u, v) + 1, max(u, v) + 1)
                    raise NotSkewSymmetrizable(pair, "inconsistent weight ratios")
        scale = lcm(*(d[c].denominator for c in component))
        nums = [int(d[c] * scale) for c in component]
        shrink = gcd(*nums)
        for c, value in zip(component, nums):
            d[c] = value // shrink
    return tuple(d)


def mutate_matrix(matrix, k):
    """Matrix mutation in direction k (1-based, mutable)."""
    if not (1 <= k <= matrix.m):
        raise ValueError(f"mutation direction {k} not in 1..{matrix.m}")
    kk = k - 1
    rows = []
    for i in range(matrix.m):
        row = []
        for j in range(matrix.n):
            b = matrix.rows[i][j]
            if i == kk or j == kk:
                row.append(-b)
            else:
                bik = matrix.rows[i][kk]
                bkj = matrix.rows[kk][j]
                row.append(b + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        rows.append(tuple(row))
    return ExchangeMatrix(matrix.m, matrix.n, tuple(rows))


def prime_toggle(name):
    """Default renaming under mutation: append a prime, or strip one."""
    return name[:-1] if name.endswith("'") else name + "'"


def _exchange_binomial(row, factors, table):
    """Sum of the two exchange monomials for one matrix row.

    ``factors[j]`` supplies the object to raise to the j-th power; works for
    both expansion polynomials and fresh chart variables."""
    pos = LaurentPoly.constant(table, 1)
    neg = LaurentPoly.constant(table, 1)
    for j, b in enumerate(row):
        if b > 0:
            pos = pos * factors[j] ** b
        elif b < 0:
            neg = neg * factors[j] ** (-b)
    return pos + neg


@dataclass(frozen=True)
class Seed:
    """Exchange matrix plus labelled variables with initial-chart expansions.

    ``table`` is the variable table of the initial chart; ``names`` are the
    current labels (they drift under mutation while the table does not).
    """

    matrix: ExchangeMatrix
    names: tuple
    table: VarTable
    expansions: tuple

    @classmethod
    def initial(cls, matrix, names):
        names = tuple(names)
        if len(names) != matrix.n:
            raise ValueError(f"expected {matrix.n} names, got {len(names)}")
        table = VarTable(names)
        expansions = tuple(LaurentPoly.variable(table, nm) for nm in names)
        return cls(matrix, names, table, expansions)

    def chart(self):
        """Variable table of this seed's own chart."""
        return VarTable(self.names)

    def mutated(self, k, new_name=None):
        """Seed mutation in direction k; the replaced variable is renamed by
        prime-toggling unless an explicit name is supplied."""
        if not (1 <= k <= self.matrix.m):
            raise ValueError(f"mutation direction {k} not in 1..{self.matrix.m}")
        binomial = _exchange_binomial(self.matrix.rows[k - 1], self.expansions, self.table)
        try:
            new_exp = (binomial / self.expansions[k - 1]).as_laurent()
        except NotLaurent as exc:    # pragma: no cover - would break Laurentness
            raise MutationArithmeticError(
                f"mutation of {self.names[k - 1]} in direction {k} "
                f"is not Laurent in the initial chart"
            ) from exc
        names = list(self.names)
        names[k - 1] = new_name if new_name is not None else prime_toggle(names[k - 1])
        expansions = list(self.expansions)
        expansions[k - 1] = new_exp
        return Seed(mutate_matrix(self.matrix, k), tuple(names), self.table,
                    tuple(expansions))

    def renamed(self, k, name):
        names = list(self.names)
        names[k - 1] = name
        return replace(self, names=tuple(names))

    def cluster_key(self):
        """Order-free identity of the cluster: sorted expansion keys."""
        return tuple(sorted(e.canonical_key() for e in self.expansions))


def find_directed_cycle(matrix):
    """Directed cycle in the quiver on mutable indices (edge i->j iff
    B_ij > 0), as a 1-based tuple, or None.  Deterministic: DFS from the
    lowest index with neighbours taken in ascending order."""
    m, rows = matrix.m, matrix.rows
    color = [0] * m
    stack = []
    result = None

    def visit(u):
        nonlocal result
        color[u] = 1
        stack.append(u)
        for v in range(m):
            if v == u or rows[u][v] <= 0:
                continue
            if color[v] == 1:
                at = stack.index(v)
                result = tuple(w + 1 for w in stack[at:])
                return
            if color[v] == 0:
                visit(v)
                if result is not None:
                    return
        stack.pop()
        color[u] = 2

    for r in range(m):
        if color[r] == 0:
            visit(r)
            if result is not None:
                return result
    return None


def is_acyclic(matrix):
    return find_directed_cycle(matrix) is None


def find_acyclic_seed(seed, max_seeds=1000, max_depth=16):
    """Breadth-first search of the mutation graph for an acyclic seed.

    Raises NotFoundWithinBudget once max_seeds distinct clusters have been
    examined (or every node within max_depth has been)."""
    seen = {seed.cluster_key()}
    queue = deque([(seed, 0)])
    examined = 0
    while queue:
        s, depth = queue.popleft()
        examined += 1
        if is_acyclic(s.matrix):
            return s
        if examined >= max_seeds:
            break
        if depth == max_depth:
            continue
        for k in range(1, s.matrix.m + 1):
            t = s.mutated(k)
            ck = t.cluster_key()
            if ck not in seen:
                seen.add(ck)
                queue.append((t, depth + 1))
    raise NotFoundWithinBudget(
        f"no acyclic seed within {max_seeds} seeds at depth <= {max_depth}"
    )


@dataclass(frozen=True)
class Presentation:
    """Generators-and-relations chart of an acyclic seed.

    Generators are the seed's variables followed by the once-mutated partners
    of the mutable ones; relation i is x_i * x_i' - P_i with P_i the exchange
    binomial of row i."""

    names: tuple
    primed_names: tuple
    frozen_names: tuple
    table: VarTable
    relations: tuple


def acyclic_presentation(seed, primed_names=None):
    cycle = find_directed_cycle(seed.matrix)
    if cycle is not None:
        raise NotAcyclic(cycle)
    m = seed.matrix.m
    if primed_names is None:
        primed_names = tuple(prime_toggle(nm) for nm in seed.names[:m])
    else:
        primed_names = tuple(primed_names)
        if len(primed_names) != m:
            raise ValueError(f"expected {m} primed names, got {len(primed_names)}")
    table = VarTable(seed.names + primed_names)
    gens = [LaurentPoly.variable(table, nm) for nm in seed.names]
    relations = []
    for i in range(m):
        binomial = _exchange_binomial(seed.matrix.rows[i], gens, table)
        partner = LaurentPoly.variable(table, primed_names[i])
        relations.append(gens[i] * partner - binomial)
    return Presentation(seed.names, primed_names, seed.names[m:], table,
                        tuple(relations))


@dataclass(frozen=True)
class ExchangeRelation:
    """One mutation step recorded against an exploration: the variable
    replaced, its partner's name (if the exploration reached it), and the two
    exchange monomials as (name, exponent) factor lists."""

    seed_index: int
    direction: int
    var: str
    partner: str
    pos: tuple
    neg: tuple
    partner_expansion: LaurentPoly


class Exploration:
    """A connected family of seeds with globally consistent variable names.

    ``variables`` maps each distinct variable name to its initial-chart
    expansion, in order of first discovery; ``truncated`` records whether the
    search stopped before exhausting the mutation graph."""

    def __init__(self, seeds, truncated):
        self.seeds = tuple(seeds)
        self.truncated = truncated
        variables = {}
        by_key = {}
        for s in self.seeds:
            for name, exp in zip(s.names, s.expansions):
                key = exp.canonical_key()
                if key in by_key:
                    if by_key[key] != name:
                        raise ValueError(
                            f"variable named both {by_key[key]!r} and {name!r}")
                elif name in variables:
                    raise ValueError(f"name {name!r} reused for a new variable")
                else:
                    by_key[key] = name
                    variables[name] = exp
        self.variables = variables
        self._by_key = by_key
        self._relations = None

    @property
    def n_variables(self):
        return len(self.variables)

    def name_of(self, expansion):
        """Registered name of an expansion, or None."""
        return self._by_key.get(expansion.canonical_key())

    def relations(self):
        """Every (seed, direction) exchange relation, seeds in discovery
        order and directions ascending."""
        if self._relations is None:
            rels = []
            for idx, s in enumerate(self.seeds):
                for k in range(1, s.matrix.m + 1):
                    row = s.matrix.rows[k - 1]
                    binomial = _exchange_binomial(row, s.expansions, s.table)
                    partner_exp = (binomial / s.expansions[k - 1]).as_laurent()
                    pos = tuple((s.names[j], b) for j, b in enumerate(row) if b > 0)
                    neg = tuple((s.names[j], -b) for j, b in enumerate(row) if b < 0)
                    rels.append(ExchangeRelation(
                        idx, k, s.names[k - 1], self.name_of(partner_exp),
                        pos, neg, partner_exp))
            self._relations = rels
        return self._relations


def explore(seed, max_seeds=1000, max_depth=16, namer=None):
    """Breadth-first exploration of the mutation graph from a seed.

    Clusters are deduplicated by their expansion multisets, so the walk
    terminates on finite exchange graphs.  Newly met variables are named by
    ``namer(seed, k)`` (default: prime-toggle of the replaced name), with
    primes appended until the name is fresh; variables met again keep their
    first name.  ``truncated`` is set when the seed budget bites or a node at
    the depth cap is left unexpanded.
    """
    registry = {}
    used = set()
    for name, exp in zip(seed.names, seed.expansions):
        registry[exp.canonical_key()] = name
        used.add(name)
    seeds = [seed]
    seen = {seed.cluster_key()}
    queue = deque([(0, 0)])
    truncated = False
    while queue:
        idx, depth = queue.popleft()
        s = seeds[idx]
        if depth == max_depth:
            truncated = True
            continue
        for k in range(1, s.matrix.m + 1):
            t = s.mutated(k)
            ck = t.cluster_key()
            if ck in seen:
                continue
            if len(seeds) >= max_seeds:
                truncated = True
                queue.clear()
                break
            key = t.expansions[k - 1].canonical_key()
            if key in registry:
                name = registry[key]
            else:
                name = namer(s, k) if namer is not None else prime_toggle(s.names[k - 1])
                while name in used:
                    name += "'"
                registry[key] = name
                used.add(name)
            if name != t.names[k - 1]:
                t = t.renamed(k, name)
            seen.add(ck)
            seeds.append(t)
            queue.append((len(seeds) - 1, depth + 1))
    return Exploration(seeds, truncated)


# ---------------------------------------------------------------------------
# seed files
# ---------------------------------------------------------------------------

class SeedFileError(ValueError):
    def __init__(self, filename, line, reason):
        self.filename = filename
        self.line = line
        self.reason = reason
        super().__init__(f"{filename}:{line}: {reason}")


def _seed_file_items(text):
    items = []
    last = 1
    for no, raw in enumerate(text.splitlines(), 1):
        last = no
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            items.append((no, stripped.split()))
    return items, last


def parse_seed_file(text, filename="<input>"):
    """Parse the line-oriented seed format::

        rank 3
        mutable 1
        names x c1 c2
        row 0 1 1

    ``#`` starts a comment.  Errors carry the file name and line number.
    """
    items, last_line = _seed_file_items(text)
    cursor = 0

    def take(keyword):
        nonlocal cursor
        if cursor >= len(items):
            raise SeedFileError(filename, last_line, f"expected '{keyword}' line")
        no, tokens = items[cursor]
        if tokens[0] != keyword:
            raise SeedFileError(filename, no, f"expected '{keyword}', got '{tokens[0]}'")
        cursor += 1
        return no, tokens[1:]

    def take_int(keyword):
        no, rest = take(keyword)
        if len(rest) != 1 or not _is_int(rest[0]):
            raise SeedFileError(filename, no, f"{keyword} must be a single integer")
        return no, int(rest[0])

    _, n = take_int("rank")
    no_m, m = take_int("mutable")
    if not (1 <= m <= n):
        raise SeedFileError(filename, no_m,
                            f"mutable must be between 1 and rank, got {m}")
    no_names, names = take("names")
    if len(names) != n:
        raise SeedFileError(filename, no_names,
                            f"expected {n} names, got {len(names)}")
    try:
        VarTable(names)
    except ValueError as exc:
        raise SeedFileError(filename, no_names, str(exc)) from None
    rows = []
    no_row = no_names
    for _ in range(m):
        no_row, rest = take("row")
        if len(rest) != n:
            raise SeedFileError(filename, no_row,
                                f"expected {n} entries, got {len(rest)}")
        for tok in rest:
            if not _is_int(tok):
                raise SeedFileError(filename, no_row,
                                    f"'{tok}' is not an integer")
        rows.append(tuple(int(tok) for tok in rest))
    if cursor < len(items):
        no, tokens = items[cursor]
        raise SeedFileError(filename, no, f"extra content: '{' '.join(tokens)}'")
    try:
        matrix = ExchangeMatrix(m, n, tuple(rows))
    except NotSkewSymmetrizable as exc:
        raise SeedFileError(
            filename, no_row,
            f"matrix is not skew-symmetrizable ({exc})") from None
    except ValueError as exc:
        raise SeedFileError(filename, no_row, str(exc)) from None
    return Seed.initial(matrix, names)


def _is_int(token):
    if token.startswith(("-", "+")):
        token = token[1:]
    return token.isdigit()


def emit_seed_file(seed):
    """Canonical text form of a seed; parse . emit is the identity on bytes."""
    lines = [
        f"rank {seed.matrix.n}",
        f"mutable {seed.matrix.m}",
        "names " + " ".join(seed.names),
    ]
    for row in seed.matrix.rows:
        lines.append("row " + " ".join(str(b) for b in row))
    return "\n".join(lines) + "\n"
