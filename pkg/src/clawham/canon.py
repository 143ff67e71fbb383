"""Canonical forms, isomorphism tests, and automorphism orbits.

Exact for n <= 16: equitable partition refinement plus individualize-and-
refine backtracking.  Nearly-rigid graphs (the bulk of every sweep) short-
cut through a brute minimum over the few orderings consistent with the
refined partition; the backtracking path handles the symmetric stragglers
with automorphism pruning.  Equal form bytes <=> isomorphic.

An optional vertex coloring (ordered list of cell masks) restricts both
isomorphisms and forms to color-preserving maps; marked structures are
canonized this way.
"""
from __future__ import annotations

import itertools

from .graphs import GraphError, LimitExceeded, Multigraph, bits

CANON_MAX_N = 16
_BRUTE_CAP = 48
_FACT = [1]
for _i in range(1, 24):
    _FACT.append(_FACT[-1] * _i)


# ---------------------------------------------------------------------------
# simple-graph engine (bitmask rows; the hot path)


def _refine_simple(rows, cells):
    """Equitable refinement of an ordered partition given as a mask list.

    Splitting is driven by neighbor counts into splitter cells; sub-cells
    are ordered by ascending count, so the result depends only on the
    isomorphism type of the partitioned graph.
    """
    cells = list(cells)
    changed = True
    while changed:
        changed = False
        for w in tuple(cells):
            i = 0
            while i < len(cells):
                cell = cells[i]
                if cell & (cell - 1):
                    groups = {}
                    m = cell
                    while m:
                        b = m & -m
                        k = (rows[b.bit_length() - 1] & w).bit_count()
                        if k in groups:
                            groups[k] |= b
                        else:
                            groups[k] = b
                        m ^= b
                    if len(groups) > 1:
                        sub = [groups[k] for k in sorted(groups)]
                        cells[i : i + 1] = sub
                        changed = True
                        i += len(sub)
                        continue
                i += 1
    return cells


def _leafkey_simple(rows, order, pos):
    for i, v in enumerate(order):
        pos[v] = i
    key = []
    for v in order:
        m = rows[v]
        r = 0
        while m:
            b = m & -m
            r |= 1 << pos[b.bit_length() - 1]
            m ^= b
        key.append(r)
    return tuple(key)


def _brute_min_simple(rows, cells, n):
    pools = [tuple(bits(c)) for c in cells]
    pos = [0] * n
    best_key = None
    best_orders = None
    for choice in itertools.product(*(itertools.permutations(p) for p in pools)):
        order = [v for grp in choice for v in grp]
        key = _leafkey_simple(rows, order, pos)
        if best_key is None or key < best_key:
            best_key = key
            best_orders = [order]
        elif key == best_key:
            best_orders.append(order)
    gens = []
    o0 = best_orders[0]
    for other in best_orders[1:]:
        p = [0] * n
        for a, b in zip(o0, other):
            p[a] = b
        gens.append(tuple(p))
    return best_key, o0, gens


def _ir_search_simple(rows, cells0, n):
    pos = [0] * n
    state = {"first_key": None, "first_order": None, "best_key": None, "best_order": None}
    gens = []
    gen_seen = set()
    identity = tuple(range(n))

    def record(o1, o2):
        p = [0] * n
        for a, b in zip(o1, o2):
            p[a] = b
        t = tuple(p)
        if t != identity and t not in gen_seen:
            gen_seen.add(t)
            gens.append(t)

    def search(cells, path):
        cells = _refine_simple(rows, cells)
        for idx, c in enumerate(cells):
            if c & (c - 1):
                break
        else:
            order = [c.bit_length() - 1 for c in cells]
            key = _leafkey_simple(rows, order, pos)
            if state["first_key"] is None:
                state["first_key"] = key
                state["first_order"] = order
                state["best_key"] = key
                state["best_order"] = order
                return
            if key == state["first_key"]:
                record(state["first_order"], order)
            if key < state["best_key"]:
                state["best_key"] = key
                state["best_order"] = order
            elif key == state["best_key"]:
                record(state["best_order"], order)
            return
        target = cells[idx]
        explored = []
        for v in bits(target):
            if explored and gens:
                fix = [p for p in gens if all(p[x] == x for x in path)]
                if fix:
                    parent = list(range(n))

                    def find(a):
                        while parent[a] != a:
                            parent[a] = parent[parent[a]]
                            a = parent[a]
                        return a

                    for p in fix:
                        for a in range(n):
                            ra, rb = find(a), find(p[a])
                            if ra != rb:
                                parent[ra] = rb
                    rv = find(v)
                    if any(find(u) == rv for u in explored):
                        continue
            child = cells[:idx] + [1 << v, target ^ (1 << v)] + cells[idx + 1 :]
            search(child, path + (v,))
            explored.append(v)

    search(list(cells0), ())
    return state["best_key"], state["best_order"], gens


def _orbits_from_gens(n, gens):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in gens:
        for a in range(n):
            ra, rb = find(a), find(p[a])
            if ra != rb:
                parent[ra] = rb
    reps = [find(a) for a in range(n)]
    norm = {}
    for a in range(n):
        norm.setdefault(reps[a], min(b for b in range(n) if reps[b] == reps[a]))
    return tuple(norm[r] for r in reps)


def canon_simple_rows(n, rows, cells=None):
    """Canonize a simple graph given as adjacency-mask rows.

    Returns (form_bytes, order, orbits) where order[i] is the original
    vertex placed at canonical position i, and orbits gives a sound (may be
    refined) orbit representative per vertex.
    """
    if n == 0:
        return b"S\x00|", (), ()
    init = [(1 << n) - 1] if cells is None else list(cells)
    sizes = bytes(c.bit_count() for c in init)
    refined = _refine_simple(rows, init)
    prod = 1
    for c in refined:
        prod *= _FACT[c.bit_count()]
        if prod > _BRUTE_CAP:
            break
    if prod <= _BRUTE_CAP:
        key, order, gens = _brute_min_simple(rows, refined, n)
    else:
        key, order, gens = _ir_search_simple(rows, refined, n)
    acc = 0
    nbits = 0
    for i in range(n):
        ri = key[i]
        for j in range(i + 1, n):
            acc = acc << 1 | (ri >> j & 1)
            nbits += 1
    payload = acc.to_bytes((nbits + 7) // 8, "big") if nbits else b""
    form = b"S" + bytes([n]) + sizes + b"|" + payload
    return form, tuple(order), _orbits_from_gens(n, gens)


# ---------------------------------------------------------------------------
# weighted engine (multigraphs; low volume, mirrors the simple one)


def _refine_weighted(wrows, cells):
    cells = list(cells)
    changed = True
    while changed:
        changed = False
        for w in tuple(cells):
            wverts = tuple(bits(w))
            i = 0
            while i < len(cells):
                cell = cells[i]
                if cell & (cell - 1):
                    groups = {}
                    for v in bits(cell):
                        row = wrows[v]
                        k = sum(row[u] for u in wverts)
                        groups[k] = groups.get(k, 0) | 1 << v
                    if len(groups) > 1:
                        sub = [groups[k] for k in sorted(groups)]
                        cells[i : i + 1] = sub
                        changed = True
                        i += len(sub)
                        continue
                i += 1
    return cells


def _leafkey_weighted(wrows, order):
    inv = {v: i for i, v in enumerate(order)}
    key = []
    for v in order:
        row = wrows[v]
        new = [0] * len(order)
        for u, i in inv.items():
            new[i] = row[u]
        key.append(tuple(new))
    return tuple(key)


def _canon_weighted(n, wrows, cells=None):
    if n == 0:
        return b"M\x00|", (), ()
    init = [(1 << n) - 1] if cells is None else list(cells)
    sizes = bytes(c.bit_count() for c in init)
    refined = _refine_weighted(wrows, init)

    pools = [tuple(bits(c)) for c in refined]
    prod = 1
    for p in pools:
        prod *= _FACT[len(p)]
    if prod > _FACT[9]:
        raise LimitExceeded(f"weighted canonical form: symmetry too large at n={n}")
    best_key = None
    best_orders = None
    for choice in itertools.product(*(itertools.permutations(p) for p in pools)):
        order = [v for grp in choice for v in grp]
        key = _leafkey_weighted(wrows, order)
        if best_key is None or key < best_key:
            best_key = key
            best_orders = [order]
        elif key == best_key and len(best_orders) < 2000:
            best_orders.append(order)
    gens = []
    o0 = best_orders[0]
    for other in best_orders[1:]:
        p = [0] * n
        for a, b in zip(o0, other):
            p[a] = b
        gens.append(tuple(p))
    key, order = best_key, o0
    payload = bytes(v for row in key for v in row)
    form = b"M" + bytes([n]) + sizes + b"|" + payload
    return form, tuple(order), _orbits_from_gens(n, gens)


# ---------------------------------------------------------------------------
# public surface


def _validate_colors(n, colors):
    if colors is None:
        return None
    cover = 0
    cells = []
    for c in colors:
        m = c if isinstance(c, int) else sum(1 << v for v in c)
        if m & cover:
            raise GraphError("color classes must be disjoint")
        cover |= m
        cells.append(m)
    if cover != (1 << n) - 1 and n > 0:
        raise GraphError("color classes must cover all vertices")
    return cells


def _weight_rows(g: Multigraph):
    w = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        w[u][v] += 1
        w[v][u] += 1
    return tuple(tuple(r) for r in w)


def canonical_form(g: Multigraph, colors=None) -> bytes:
    """Canonical byte string; equal forms exactly for isomorphic graphs."""
    if g.n > CANON_MAX_N:
        raise LimitExceeded(f"canonical form is exact only up to n={CANON_MAX_N}")
    cells = _validate_colors(g.n, colors)
    if g.is_simple:
        form, _, _ = canon_simple_rows(g.n, g.rows, cells)
    else:
        form, _, _ = _canon_weighted(g.n, _weight_rows(g), cells)
    return form


def canonical_labeling(g: Multigraph, colors=None):
    """(perm, form) with perm[old] = canonical position of old."""
    if g.n > CANON_MAX_N:
        raise LimitExceeded(f"canonical form is exact only up to n={CANON_MAX_N}")
    cells = _validate_colors(g.n, colors)
    if g.is_simple:
        form, order, _ = canon_simple_rows(g.n, g.rows, cells)
    else:
        form, order, _ = _canon_weighted(g.n, _weight_rows(g), cells)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return tuple(perm), form


def automorphism_orbits(g: Multigraph, colors=None):
    """Orbit representative per vertex under discovered automorphisms.

    Sound (vertices sharing a representative are genuinely equivalent) but
    callers needing completeness should fall back to form comparisons.
    """
    cells = _validate_colors(g.n, colors)
    if g.is_simple:
        _, _, orbits = canon_simple_rows(g.n, g.rows, cells)
    else:
        _, _, orbits = _canon_weighted(g.n, _weight_rows(g), cells)
    return orbits


def are_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    if sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_form(g) == canonical_form(h)
