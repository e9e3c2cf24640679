"""Immutable simple graphs, named constructions, and Cartesian products.

Vertices are always 0..n-1. Product vertices are flattened row-major:
the pair (g, h) becomes g * |V(H)| + h.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "GraphParseError",
    "complete",
    "cycle",
    "petersen",
    "cartesian_product",
    "star_subdivide",
    "is_spanning_subgraph",
    "parse_graph_expr",
    "read_edge_list",
    "product_vertex",
    "product_pair",
]


class GraphParseError(ValueError):
    """Malformed graph expression or edge-list file."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class Graph:
    """Simple undirected graph, immutable after construction.

    Self-loops are rejected; duplicate and reversed edge entries are merged.
    Neighbor lists are kept sorted. Hashable, so solver results can be
    memoized per graph.
    """

    __slots__ = ("n", "_adj", "_masks", "_degrees", "_min_deg", "_max_deg", "_edges", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._masks: tuple[int, ...] = tuple(
            sum(1 << w for w in row) for row in self._adj
        )
        self._degrees: tuple[int, ...] = tuple(len(row) for row in self._adj)
        self._min_deg = min(self._degrees)
        self._max_deg = max(self._degrees)
        self._edges: tuple[tuple[int, int], ...] = tuple(
            (u, v) for u in range(n) for v in self._adj[u] if u < v
        )
        self._hash: int | None = None

    # --- basic accessors -------------------------------------------------

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    @property
    def min_degree(self) -> int:
        return self._min_deg

    @property
    def max_degree(self) -> int:
        return self._max_deg

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def neighbor_mask(self, v: int) -> int:
        """Open neighborhood of v as a bitmask."""
        return self._masks[v]

    def closed_mask(self, v: int) -> int:
        return self._masks[v] | (1 << v)

    def is_adjacent(self, u: int, v: int) -> bool:
        return (self._masks[u] >> v) & 1 == 1

    def vertices(self) -> range:
        return range(self.n)

    # --- structure -------------------------------------------------------

    def components(self) -> list[tuple[int, ...]]:
        """Connected components, each a sorted vertex tuple, ordered by minimum."""
        seen = [False] * self.n
        out: list[tuple[int, ...]] = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack = [s]
            seen[s] = True
            comp = []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(tuple(sorted(comp)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    # --- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)})"


# --- named constructions --------------------------------------------------


def complete(n: int) -> Graph:
    """K_n, n >= 1."""
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle(n: int) -> Graph:
    """C_n, n >= 3."""
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def petersen() -> Graph:
    """The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
        edges.append((i, 5 + i))
    return Graph(10, edges)


def product_vertex(g: int, h: int, h_order: int) -> int:
    """Flattened id of the product vertex (g, h)."""
    return g * h_order + h


def product_pair(x: int, h_order: int) -> tuple[int, int]:
    """Inverse of product_vertex."""
    return divmod(x, h_order)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: (a,x)~(b,y) iff (a=b and x~y) or (x=y and a~b)."""
    nh = h.n
    edges: list[tuple[int, int]] = []
    for a in range(g.n):
        base = a * nh
        for x, y in h.edges:
            edges.append((base + x, base + y))
    for x in range(nh):
        for a, b in g.edges:
            edges.append((a * nh + x, b * nh + x))
    return Graph(g.n * nh, edges)


def star_subdivide(g: Graph, pendants_per_vertex: int = 1) -> Graph:
    """Attach pendants to every vertex, then subdivide each original edge twice.

    Layout: originals keep their ids; pendant t of vertex v is
    n + v*p + t; edge number e (in g.edges order, endpoints u < v) becomes
    the path u - a - b - v with a = n + n*p + 2e and b = a + 1.
    """
    p = pendants_per_vertex
    if p < 1:
        raise ValueError(f"need at least one pendant per vertex, got {p}")
    n = g.n
    edges: list[tuple[int, int]] = []
    for v in range(n):
        for t in range(p):
            edges.append((v, n + v * p + t))
    base = n + n * p
    for e, (u, v) in enumerate(g.edges):
        a = base + 2 * e
        b = a + 1
        edges.extend(((u, a), (a, b), (b, v)))
    return Graph(base + 2 * g.num_edges, edges)


def is_spanning_subgraph(g: Graph, g_prime: Graph) -> bool:
    """True iff the graphs have the same vertex count and E(g) is a subset of E(g_prime)."""
    if g.n != g_prime.n:
        return False
    return set(g.edges) <= set(g_prime.edges)


# --- expression parser ------------------------------------------------------
#
# Grammar:   expr    := term ('x' term)*          products associate left
#            term    := 'K' digits | 'C' digits | 'P'
#                     | 'star(' expr ',' digits ')'
#                     | '@' rest-of-string        edge-list file reference
#
# An '@' operand extends to the end of the string, so a file reference can
# only be the final operand of a product.


def read_edge_list(path: str) -> Graph:
    """Edge-list file: first line n, then one 'u v' pair per line (0-indexed).

    Duplicate and reversed edges are tolerated and merged. Blank lines are
    skipped.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise GraphParseError(f"cannot read edge list {path!r}: {exc}") from exc
    lines = [ln.strip() for ln in raw.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphParseError(f"edge list {path!r} is empty")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphParseError(f"edge list {path!r}: first line must be the vertex count") from None
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphParseError(f"edge list {path!r}: bad line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"edge list {path!r}: bad line {ln!r}") from None
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise GraphParseError(f"edge list {path!r}: {exc}") from exc


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> GraphParseError:
        return GraphParseError(message, position=self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def read_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse_expr(self) -> Graph:
        g = self.parse_term()
        while True:
            self.skip_ws()
            if self.peek() == "x":
                self.pos += 1
                rhs = self.parse_term()
                g = cartesian_product(g, rhs)
            else:
                return g

    def parse_term(self) -> Graph:
        self.skip_ws()
        c = self.peek()
        if c == "K":
            self.pos += 1
            n = self.read_int()
            try:
                return complete(n)
            except ValueError as exc:
                raise self.error(str(exc)) from None
        if c == "C":
            self.pos += 1
            n = self.read_int()
            try:
                return cycle(n)
            except ValueError as exc:
                raise self.error(str(exc)) from None
        if c == "P":
            self.pos += 1
            return petersen()
        if c == "@":
            self.pos += 1
            path = self.text[self.pos :].strip()
            if not path:
                raise self.error("expected a file path after '@'")
            self.pos = len(self.text)
            return read_edge_list(path)
        if self.text.startswith("star(", self.pos):
            self.pos += len("star(")
            inner = self.parse_expr()
            self.skip_ws()
            if self.peek() != ",":
                raise self.error("expected ',' in star(...)")
            self.pos += 1
            self.skip_ws()
            p = self.read_int()
            self.skip_ws()
            if self.peek() != ")":
                raise self.error("expected ')' in star(...)")
            self.pos += 1
            try:
                return star_subdivide(inner, p)
            except ValueError as exc:
                raise self.error(str(exc)) from None
        raise self.error(f"cannot parse graph term starting at {self.text[self.pos:self.pos+10]!r}")


def parse_graph_expr(text: str) -> Graph:
    """Parse expressions like 'K3xK4', 'C7', 'P', 'star(C5,1)xK2', '@edges.txt'."""
    parser = _Parser(text)
    g = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing characters after graph expression")
    return g
