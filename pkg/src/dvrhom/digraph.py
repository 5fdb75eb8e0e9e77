"""Finite digraphs stored as reflexive relations (closure spaces).

Every digraph here is *spatial*: a loop is kept at each vertex, so the edge
relation doubles as an Alexandroff closure operator.  Orientation
conventions, fixed once and documented in the README:

* ``closure_of`` follows out-edges: c({x}) = {y : x -> y}.
* ``minimal_neighborhood`` collects in-edges: U_x = {y : y -> x}.

Adjacency is held as one integer bitmask per vertex, so membership tests
and the semicomplete-neighbor queries of the complex builder are O(n/word).
Digraph values are immutable after construction.
"""

from __future__ import annotations


class InputError(ValueError):
    """Input outside an operation's contract (bad index, empty set, ...)."""


def _iter_bits(mask):
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_of(verts):
    m = 0
    for v in verts:
        m |= 1 << v
    return m


def _verts_of(mask):
    return tuple(_iter_bits(mask))


class Digraph:
    """Immutable digraph on vertices 0..n-1 with loops at every vertex."""

    __slots__ = ("n", "_out", "_in", "_sym", "labels", "parent")

    def __init__(self, n, out_masks, in_masks, labels=None, parent=None):
        self.n = n
        self._out = tuple(out_masks)
        self._in = tuple(in_masks)
        self._sym = tuple(o | i for o, i in zip(out_masks, in_masks))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise InputError(f"{len(labels)} labels for {n} vertices")
            if len(set(labels)) != n:
                raise InputError("vertex labels must be unique")
        self.labels = labels
        self.parent = parent

    @classmethod
    def from_edge_list(cls, n, edges, labels=None):
        """Build the spatial digraph on ``n`` vertices from ordered pairs.

        Loops are always added; duplicate edges and explicit loops collapse.
        """
        out = [1 << v for v in range(n)]
        inc = [1 << v for v in range(n)]
        for pair in edges:
            u, v = pair
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for {n} vertices")
            out[u] |= 1 << v
            inc[v] |= 1 << u
        return cls(n, out, inc, labels=labels)

    def has_edge(self, u, v):
        return (self._out[u] >> v) & 1 == 1

    def out_set(self, u):
        return _verts_of(self._out[u])

    def in_set(self, u):
        return _verts_of(self._in[u])

    def out_mask(self, u):
        return self._out[u]

    def in_mask(self, u):
        return self._in[u]

    def sym_mask(self, u):
        return self._sym[u]

    def vertices(self):
        return range(self.n)

    def edges(self, include_loops=False):
        """Ordered pairs (u, v), sorted; loops skipped unless asked for."""
        for u in range(self.n):
            for v in _iter_bits(self._out[u]):
                if include_loops or u != v:
                    yield (u, v)

    def label_of(self, v):
        return self.labels[v] if self.labels is not None else str(v)

    # Equality is vertex count plus edge set; labels are presentation-only.
    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._out == other._out

    def __hash__(self):
        return hash((self.n, self._out))

    def __repr__(self):
        m = sum(1 for _ in self.edges())
        return f"Digraph(n={self.n}, edges={m})"


def _check_vertex(g, x):
    if not (0 <= x < g.n):
        raise InputError(f"vertex {x} out of range for {g.n} vertices")


def _vertex_set(g, a):
    """Normalize an iterable of vertices to a sorted duplicate-free tuple."""
    vs = sorted(set(a))
    for v in vs:
        _check_vertex(g, v)
    return tuple(vs)


def from_edge_list(n, edges, labels=None):
    return Digraph.from_edge_list(n, edges, labels=labels)


def closure_of(g, a):
    """Union of out-neighborhoods over ``a``; contains ``a`` by reflexivity."""
    mask = 0
    for x in _vertex_set(g, a):
        mask |= g._out[x]
    return _verts_of(mask)


def _closure_mask(g, mask):
    c = 0
    for x in _iter_bits(mask):
        c |= g._out[x]
    return c


def _interior_mask(g, mask):
    full = (1 << g.n) - 1
    return full & ~_closure_mask(g, full & ~mask)


def interior_of(g, a):
    """Complement of the closure of the complement; always inside ``a``."""
    return _verts_of(_interior_mask(g, _mask_of(_vertex_set(g, a))))


def minimal_neighborhood(g, x):
    """In-neighborhood of ``x``: the smallest set whose interior contains x."""
    _check_vertex(g, x)
    return g.in_set(x)


def is_interior_cover(g, family):
    """True iff the interiors of the family's members cover every vertex."""
    covered = 0
    for a in family:
        covered |= _interior_mask(g, _mask_of(_vertex_set(g, a)))
    return covered == (1 << g.n) - 1


def induced_subgraph(g, a):
    """Digraph on ``a`` re-indexed to 0..|a|-1, keeping exactly g's edges.

    ``parent`` records the original identifiers; labels are inherited.
    """
    a = _vertex_set(g, a)
    if not a:
        raise InputError("induced subgraph needs a nonempty vertex set")
    pos = {v: i for i, v in enumerate(a)}
    out = []
    inc = []
    amask = _mask_of(a)
    for v in a:
        out.append(_mask_of(pos[w] for w in _iter_bits(g._out[v] & amask)))
        inc.append(_mask_of(pos[w] for w in _iter_bits(g._in[v] & amask)))
    labels = tuple(g.label_of(v) for v in a) if g.labels is not None else None
    return Digraph(len(a), out, inc, labels=labels, parent=a)


def is_symmetric(g):
    """True iff every edge is bidirected (u -> v implies v -> u)."""
    return g._out == g._in
