"""Shared pieces of the instance generators: a named-vertex builder, the output record and validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from ..cnf import CnfFormula
from ..graph import Arrangement, Graph, GraphError, cutwidth_of

Name = tuple


class Builder:
    """Collects named vertices, edges and terminals while a construction runs."""

    def __init__(self) -> None:
        self.names: list[Name] = []
        self.index: dict[Name, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.terminals: list[int] = []

    def add(self, *name: Hashable, terminal: bool = False) -> int:
        if name in self.index:
            raise ValueError(f"duplicate vertex name {name}")
        v = self.index[name] = len(self.names)
        self.names.append(name)
        if terminal:
            self.terminals.append(v)
        return v

    def __getitem__(self, name: Name) -> int:
        return self.index[name]

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def path(self, vertices: Sequence[int]) -> None:
        for a, b in zip(vertices, vertices[1:]):
            self.edge(a, b)

    def clique(self, vertices: Sequence[int]) -> None:
        for a in range(len(vertices)):
            for b in range(a + 1, len(vertices)):
                self.edge(vertices[a], vertices[b])

    def subdivide(self, u: int, v: int, *name: Hashable, terminal: bool = False) -> int:
        """Add a new vertex adjacent to ``u`` and ``v`` only."""
        x = self.add(*name, terminal=terminal)
        self.edge(u, x)
        self.edge(x, v)
        return x

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.names), self.edges)


def thread_path(order: Sequence[int], attached: Iterable[int], make: Callable[[int], tuple[list[int], int]], b: Builder) -> list[int]:
    """Insert a path whose ``i``-th vertex is the private neighbour of the ``i``-th attached vertex.

    ``make(x)`` creates the private neighbour of ``x`` and returns the block to
    place directly before ``x`` (ending with that neighbour) and the neighbour.
    Path vertices follow the order of their attached vertices.
    """
    attached = set(attached)
    out: list[int] = []
    prev = None
    for x in order:
        if x in attached:
            block, rho = make(x)
            b.edge(rho, x)
            if prev is not None:
                b.edge(prev, rho)
            prev = rho
            out.extend(block)
        out.append(x)
    return out


@dataclass(frozen=True)
class ReductionOutput:
    """A generated instance plus everything needed to audit it."""

    problem: str
    formula: CnfFormula
    graph: Graph
    arrangement: Arrangement
    budget: int
    claimed_bound: int
    names: tuple[Name, ...]
    terminals: tuple[int, ...] = ()
    packing: tuple[tuple[frozenset[int], int], ...] = ()
    closed_form: int | None = None  # budget recomputed from the closed formula
    reference_budget: int | None = None  # reference closed form, when it disagrees with the construction
    params: dict = field(default_factory=dict)
    index: dict[Name, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.index:
            object.__setattr__(self, "index", {name: v for v, name in enumerate(self.names)})

    def vertex(self, *name: Hashable) -> int:
        return self.index[name]

    def named(self, kind: str) -> list[int]:
        """Vertices whose name starts with ``kind``."""
        return [v for v, name in enumerate(self.names) if name[0] == kind]


def finish(
    problem: str,
    f: CnfFormula,
    b: Builder,
    order: Sequence[int],
    budget: int,
    claimed_bound: int,
    packing: Sequence[tuple[Iterable[int], int]] = (),
    terminals: Iterable[int] = (),
    closed_form: int | None = None,
    reference_budget: int | None = None,
    **params,
) -> ReductionOutput:
    return ReductionOutput(
        problem=problem,
        formula=f,
        graph=b.graph(),
        arrangement=Arrangement.of(order),
        budget=budget,
        claimed_bound=claimed_bound,
        names=tuple(b.names),
        terminals=tuple(sorted(terminals)),
        packing=tuple((frozenset(c), p) for c, p in packing),
        closed_form=budget if closed_form is None else closed_form,
        reference_budget=reference_budget,
        params=dict(params),
    )


@dataclass
class StructureReport:
    checks: dict[str, tuple[bool, str]] = field(default_factory=dict)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = (bool(ok), detail)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, (ok, detail) in self.checks.items() if not ok]


def validate_structure(out: ReductionOutput) -> StructureReport:
    """Audit a generated instance; failures are reported, never raised."""
    rep = StructureReport()
    g = out.graph
    try:
        perm = sorted(out.arrangement.order) == list(range(g.n))
    except Exception as exc:  # malformed arrangement objects
        perm = False
        rep.record("permutation", False, str(exc))
    else:
        rep.record("permutation", perm, "" if perm else "arrangement is not a permutation of the vertices")
    if perm:
        try:
            width = cutwidth_of(g, out.arrangement)
        except GraphError as exc:
            rep.record("cutwidth", False, str(exc))
        else:
            rep.record("cutwidth", width <= out.claimed_bound, f"cutwidth {width}, claimed bound {out.claimed_bound}")
    rep.record("budget", out.budget == out.closed_form, f"budget {out.budget}, closed form {out.closed_form}")
    if out.packing:
        seen: set[int] = set()
        overlap = 0
        for comp, _ in out.packing:
            overlap += len(seen & comp)
            seen |= comp
        rep.record("packing_disjoint", overlap == 0, f"{overlap} repeated vertices")
        total = sum(p for _, p in out.packing)
        rep.record("packing_sum", total == out.budget, f"packing sum {total}, budget {out.budget}")
        rep.record("packing_range", all(0 <= v < g.n for v in seen), "")
    names_ok = len(out.names) == g.n and len(out.index) == g.n
    rep.record("metadata", names_ok and all(out.index[nm] == v for v, nm in enumerate(out.names)), "name table does not match the graph")
    rep.record("terminals", all(0 <= v < g.n for v in out.terminals) and len(set(out.terminals)) == len(out.terminals), "")
    return rep
