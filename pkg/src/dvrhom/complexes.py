"""Directed Vietoris-Rips (directed clique) complexes.

A vertex set is a simplex when its members admit an ordering v0,...,vk with
an edge v_i -> v_j whenever i < j.  Such an ordering is the simplex's
*witness*; it is not unique once bidirected edges exist, so construction
fixes a canonical one (first found by tail-extension DFS in ascending vertex
order).  Simplices are identified by their sorted vertex tuple; the witness
is metadata.

For symmetric digraphs the construction degenerates to the clique complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .digraph import InputError, _iter_bits, induced_subgraph, minimal_neighborhood


@dataclass(frozen=True)
class Simplex:
    verts: tuple
    witness: tuple


class SimplicialComplex:
    """Face-closed family of simplices, graded by dimension.

    ``by_dimension[d]`` lists the d-simplices as sorted vertex tuples, in
    lexicographic order; ``witness`` maps each tuple to its witness ordering;
    ``index`` maps each tuple to (dimension, position).  ``truncated`` marks
    complexes cut off by a dimension cap (the top homology degree of such a
    complex is unreliable).
    """

    def __init__(self, by_dimension, witness, digraph=None, truncated=False):
        self.by_dimension = [list(level) for level in by_dimension]
        while self.by_dimension and not self.by_dimension[-1]:
            self.by_dimension.pop()
        self.witness = dict(witness)
        self.digraph = digraph
        self.truncated = truncated
        self.index = {}
        for d, level in enumerate(self.by_dimension):
            for pos, s in enumerate(level):
                self.index[s] = (d, pos)

    @classmethod
    def from_simplices(cls, faces, witnesses=None, digraph=None):
        """Abstract complex from arbitrary vertex sets, closed under faces.

        Witnesses default to the sorted vertex tuple (the natural reading for
        complexes without an ambient digraph).
        """
        closed = set()
        for f in faces:
            f = tuple(sorted(set(f)))
            if not f:
                raise InputError("simplices must be nonempty")
            for k in range(1, len(f) + 1):
                closed.update(combinations(f, k))
        by_dim = []
        for s in sorted(closed, key=lambda t: (len(t), t)):
            d = len(s) - 1
            while len(by_dim) <= d:
                by_dim.append([])
            by_dim[d].append(s)
        witness = {s: s for level in by_dim for s in level}
        if witnesses:
            for s, w in witnesses.items():
                s = tuple(s)
                if s not in witness:
                    raise InputError(f"witness given for missing simplex {s}")
                if tuple(sorted(w)) != s:
                    raise InputError(f"witness {w} is not an ordering of {s}")
                witness[s] = tuple(w)
        return cls(by_dim, witness, digraph=digraph)

    def simplices(self):
        for level in self.by_dimension:
            yield from level

    def simplex(self, verts):
        verts = tuple(sorted(verts))
        return Simplex(verts, self.witness[verts])

    def __contains__(self, verts):
        return tuple(sorted(verts)) in self.index

    @property
    def dim(self):
        return len(self.by_dimension) - 1

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            self.by_dimension == other.by_dimension and self.witness == other.witness
        )

    def __repr__(self):
        return f"SimplicialComplex(f_vector={f_vector(self)!r})"


def is_simplex(g, s):
    """Witness ordering of ``s`` in ``g``, or None if no ordering exists.

    Depth-first search extending a partial ordering only at the tail: vertex
    w may be appended when every current member has an edge to w.  Candidates
    are tried in ascending identifier order, so the result is canonical.
    """
    s = tuple(sorted(set(s)))
    if not s:
        raise InputError("is_simplex needs a nonempty vertex set")
    for v in s:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} out of range for {g.n} vertices")
    remaining = 0
    for v in s:
        remaining |= 1 << v

    def extend(prefix, allowed, remaining):
        if not remaining:
            return prefix
        for w in _iter_bits(remaining & allowed):
            found = extend(prefix + (w,), allowed & g._out[w], remaining & ~(1 << w))
            if found is not None:
                return found
        return None

    return extend((), (1 << g.n) - 1, remaining)


def _level_candidates(g, sigma):
    """Vertices above max(sigma) semicomplete-adjacent to all of sigma."""
    cand = ((1 << g.n) - 1) & ~((1 << (sigma[-1] + 1)) - 1)
    for v in sigma:
        cand &= g._sym[v]
    return cand


def build_complex(g, max_dim=None):
    """Directed Vietoris-Rips complex of ``g`` up to ``max_dim``.

    Level-by-level: a candidate set sigma+{w} is tried only when all its
    facets are already present and w is semicomplete-adjacent to sigma, then
    confirmed by a fresh witness search (facet witnesses do not certify the
    extension once bidirected edges are around).  Output is deterministic.
    """
    if max_dim is not None and max_dim < 0:
        raise InputError("dimension cap must be >= 0")
    if g.n == 0:
        return SimplicialComplex([], {}, digraph=g)
    levels = [[(v,) for v in range(g.n)]]
    witness = {(v,): (v,) for v in range(g.n)}
    dim = 0
    while levels[-1] and (max_dim is None or dim < max_dim):
        nxt = _next_level(g, levels[-1], witness)
        if not nxt:
            break
        levels.append(nxt)
        dim += 1
    truncated = False
    if max_dim is not None and len(levels) == max_dim + 1 and levels[-1]:
        # Probe one level further so consumers can flag the capped degree.
        truncated = bool(_next_level(g, levels[-1], {}, first_only=True))
    return SimplicialComplex(levels, witness, digraph=g, truncated=truncated)


def _next_level(g, prev, witness, first_only=False):
    prev_set = set(prev)
    nxt = []
    for sigma in prev:
        for w in _iter_bits(_level_candidates(g, sigma)):
            tau = sigma + (w,)
            if any(
                tau[:i] + tau[i + 1 :] not in prev_set for i in range(len(sigma))
            ):
                continue
            order = is_simplex(g, tau)
            if order is not None:
                witness[tau] = order
                nxt.append(tau)
                if first_only:
                    return nxt
    return nxt


def f_vector(k):
    """Simplex counts per dimension; the empty complex gives ()."""
    return tuple(len(level) for level in k.by_dimension)


def restrict_to(k, a):
    """Full subcomplex of ``k`` on the vertex subset ``a`` (same ids)."""
    aset = set(a)
    by_dim = [
        [s for s in level if aset.issuperset(s)] for level in k.by_dimension
    ]
    witness = {s: k.witness[s] for level in by_dim for s in level}
    return SimplicialComplex(by_dim, witness, digraph=k.digraph, truncated=k.truncated)


def check_full_subcomplex(g, a, max_dim=None):
    """Executable check that restriction and induced construction agree.

    Compares the simplices of the whole complex supported inside ``a``
    against the complex built from the induced subgraph; both inclusions are
    required.  Expected to hold universally.
    """
    a = tuple(sorted(set(a)))
    if not a:
        raise InputError("check_full_subcomplex needs a nonempty vertex set")
    whole = build_complex(g, max_dim)
    local = build_complex(induced_subgraph(g, a), max_dim)
    pos = {v: i for i, v in enumerate(a)}
    aset = set(a)
    restricted = {
        tuple(pos[v] for v in s) for s in whole.simplices() if aset.issuperset(s)
    }
    return restricted == set(local.simplices())


def check_cone(g, x):
    """Check that the complex of U_x is a combinatorial cone with apex x.

    Expected to hold for every digraph and vertex; a failure means witness
    or adjacency corruption.
    """
    u = minimal_neighborhood(g, x)
    sub = induced_subgraph(g, u)
    apex = u.index(x)
    k = build_complex(sub)
    return all(tuple(sorted(set(s) | {apex})) in k for s in k.simplices())


@dataclass(frozen=True)
class SimplicialMapReport:
    """Image data of a vertex map applied simplexwise."""

    vertex_map: tuple
    entries: tuple  # pairs (source simplex, image simplex)
    degenerate: tuple  # source simplices whose image drops dimension
    all_images_present: bool


def map_complex(f, source, target):
    """Apply a digraph morphism to every simplex and confirm the images.

    ``f`` maps source vertices to target vertices (sequence or mapping); it
    must send edges to edges, which is verified, not assumed.
    """
    fmap = tuple(f[v] for v in range(source.n))
    for v in fmap:
        if not (0 <= v < target.n):
            raise InputError(f"image vertex {v} out of range for target")
    for u in range(source.n):
        for v in source.out_set(u):
            if not target.has_edge(fmap[u], fmap[v]):
                raise InputError(
                    f"not a digraph morphism: edge ({u}, {v}) maps to "
                    f"non-edge ({fmap[u]}, {fmap[v]})"
                )
    ks = build_complex(source)
    kt = build_complex(target)
    entries = []
    degenerate = []
    ok = True
    for s in ks.simplices():
        image = tuple(sorted({fmap[v] for v in s}))
        entries.append((s, image))
        if len(image) < len(s):
            degenerate.append(s)
        if image not in kt:
            ok = False
    return SimplicialMapReport(fmap, tuple(entries), tuple(degenerate), ok)
