"""Witness graphs and their red-edge replay, with machine-checked invariants.

The closure trace drives two bookkeeping passes:

* witness construction: W_e = {e} for initial edges, and otherwise the union
  of the witnesses of the non-anchor edges of the completing copy chosen for
  e by the engine;
* red-edge replay: the dynamics are sequentialized so copies are added one
  at a time, the added edge of each copy colored red, and the evolving
  hypergraph components (copies sharing a graph edge) are tracked so the
  per-component edge bounds can be verified after every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .closure import ClosureTrace, Embedding, close
from .graphs import Graph, canon_edge
from .patterns import PatternStats

Edge = tuple[int, int]


class ReplayError(Exception):
    """An inconsistency between trace, witnesses and replay (engine bug)."""


@dataclass
class WitnessRecord:
    target: Edge
    edges: frozenset[Edge]
    k: int                       # vertices spanned by the witness
    size: int                    # k - 2, the paper's notion of size
    edge_count: int
    ell_lambda: Fraction | None  # excess over lambda*(k-2)+1
    ell_star: Fraction | None    # excess over lambda_**(k-v_H)+e_H-1


@dataclass
class REAStep:
    j: int
    copy: Embedding
    red_edge: Edge
    # (component creation id, eps_i, delta_i) for each merged component,
    # in creation order
    merged_components: list[tuple[int, int, int]]
    case: str                    # "case1" | "case2" (new components are case2)
    tree_step: bool
    component_vertices: int      # v_C of the component after this step
    component_nonred: int        # its non-red edge count


@dataclass
class REATrace:
    target: Edge
    steps: list[REAStep]
    red_edges: list[Edge]
    witness_edges: frozenset[Edge]


@dataclass
class Report:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    applicable: bool = True
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


# -- witness set algorithm ---------------------------------------------------


def close_with_witnesses(
    g: Graph, h: Graph, stats: PatternStats | None = None
) -> tuple[ClosureTrace, dict[Edge, WitnessRecord]]:
    from .patterns import analyze

    stats = stats or analyze(h)
    trace = close(g, h)
    witnesses: dict[Edge, frozenset[Edge]] = {
        e: frozenset([e]) for e in g.edges()
    }
    for rnd in trace.rounds:
        for edge, emb in rnd.added:
            support = emb.support_edges(h)
            witnesses[edge] = frozenset().union(
                *(witnesses[f] for f in support)
            )
    records = {
        e: _make_record(e, w, stats) for e, w in witnesses.items()
    }
    return trace, records


def _make_record(target: Edge, edges: frozenset[Edge], stats: PatternStats) -> WitnessRecord:
    spanned = {v for e in edges for v in e}
    k = len(spanned)
    m = len(edges)
    ell_lambda = None
    ell_star = None
    if stats.lam is not None and k >= 3:
        ell_lambda = m - (stats.lam * (k - 2) + 1)
    if stats.lambda_star is not None and k >= stats.v_h:
        ell_star = m - (stats.lambda_star * (k - stats.v_h) + stats.e_h - 1)
    return WitnessRecord(
        target=target,
        edges=edges,
        k=k,
        size=k - 2,
        edge_count=m,
        ell_lambda=ell_lambda,
        ell_star=ell_star,
    )


# -- red edge algorithm replay -----------------------------------------------


class _Component:
    __slots__ = ("cid", "vertices", "edges", "red")

    def __init__(self, cid: int):
        self.cid = cid
        self.vertices: set[int] = set()
        self.edges: set[Edge] = set()
        self.red: set[Edge] = set()


def rea_replay(
    target: Edge,
    witnesses: dict[Edge, WitnessRecord],
    trace: ClosureTrace,
    h: Graph,
) -> REATrace:
    """Sequentialize the formation of W_target, one copy per step.

    Children are expanded in lexicographic edge order; the red edge of step
    j is the dynamics-added edge whose completing copy is placed at step j.
    """
    target = canon_edge(*target)
    initial = trace.initial
    emb_of: dict[Edge, Embedding] = {
        e: emb for rnd in trace.rounds for e, emb in rnd.added
    }
    if target not in witnesses:
        raise ReplayError(f"{target} not in the closure")
    if initial.has_edge(*target):
        return REATrace(target=target, steps=[], red_edges=[],
                        witness_edges=witnesses[target].edges)

    # dependency-respecting sequential schedule, children in lex order
    schedule: list[Edge] = []
    scheduled: set[Edge] = set()
    stack: list[tuple[Edge, bool]] = [(target, False)]
    while stack:
        edge, expanded = stack.pop()
        if edge in scheduled:
            continue
        if expanded:
            scheduled.add(edge)
            schedule.append(edge)
            continue
        stack.append((edge, True))
        support = sorted(emb_of[edge].support_edges(h))
        for f in reversed(support):
            if f not in scheduled and not initial.has_edge(*f):
                if f not in emb_of:
                    raise ReplayError(f"support edge {f} has no certificate")
                stack.append((f, False))

    steps: list[REAStep] = []
    comps: dict[int, _Component] = {}
    next_cid = 0
    edge2comp: dict[Edge, int] = {}
    placed_edges: set[Edge] = set()
    union_vertices: set[int] = set()
    red_edges: list[Edge] = []

    for j, red in enumerate(schedule, start=1):
        emb = emb_of[red]
        copy_edges = [canon_edge(*e) for e in emb.copy_edges(h)]
        copy_vertices = set(emb.mapping)
        if red in placed_edges:
            raise ReplayError(f"red edge {red} already present at step {j}")
        for f in copy_edges:
            if f != red and f not in placed_edges and not initial.has_edge(*f):
                raise ReplayError(f"step {j}: support edge {f} unavailable")

        touched = sorted(
            {edge2comp[f] for f in copy_edges if f in edge2comp}
        )
        merged_stats: list[tuple[int, int, int]] = []
        seen_vertices: set[int] = set()
        for cid in touched:
            comp = comps[cid]
            eps = len(comp.vertices & copy_vertices)
            delta = len(comp.vertices & (seen_vertices - copy_vertices))
            if eps < 2:
                raise ReplayError(
                    f"step {j}: component {cid} shares an edge but eps={eps}"
                )
            merged_stats.append((cid, eps, delta))
            seen_vertices |= comp.vertices

        if len(touched) == 1 and set(copy_edges) - {red} <= comps[touched[0]].edges:
            case = "case1"
            tree = False
        else:
            case = "case2"
            tree = not touched or all(
                eps == 2 and delta == 0 for _, eps, delta in merged_stats
            )

        # merge into the lowest-creation-id component (or a fresh one)
        if touched:
            root = comps[touched[0]]
            for cid in touched[1:]:
                other = comps.pop(cid)
                root.vertices |= other.vertices
                root.edges |= other.edges
                root.red |= other.red
                for f in other.edges:
                    edge2comp[f] = root.cid
        else:
            root = _Component(next_cid)
            next_cid += 1
            comps[root.cid] = root
        root.vertices |= copy_vertices
        for f in copy_edges:
            root.edges.add(f)
            edge2comp[f] = root.cid
        root.red.add(red)

        placed_edges.update(copy_edges)
        union_vertices |= copy_vertices
        red_edges.append(red)
        steps.append(
            REAStep(
                j=j,
                copy=emb,
                red_edge=red,
                merged_components=merged_stats,
                case=case,
                tree_step=tree,
                component_vertices=len(root.vertices),
                component_nonred=len(root.edges) - len(root.red),
            )
        )

    if len(comps) != 1:
        raise ReplayError(f"final hypergraph disconnected: {len(comps)} components")
    rebuilt = placed_edges - set(red_edges)
    if rebuilt != set(witnesses[target].edges):
        raise ReplayError("replay does not reproduce the stored witness")
    return REATrace(
        target=target,
        steps=steps,
        red_edges=red_edges,
        witness_edges=witnesses[target].edges,
    )


# -- invariant checks ----------------------------------------------------------


def check_witness_closures(
    witnesses: dict[Edge, WitnessRecord], h: Graph, trace: ClosureTrace
) -> Report:
    """Every target must be re-added when its witness alone is closed."""
    from .closure import closure_contains_edge
    from .graphs import induced_subgraph

    rep = Report(name="witness-closure")
    for target, rec in witnesses.items():
        rep.checked += 1
        if target in rec.edges:
            continue
        spanned = sorted({v for e in rec.edges for v in e})
        pos = {v: i for i, v in enumerate(spanned)}
        sub = Graph(len(spanned))
        for a, b in rec.edges:
            sub.add_edge(pos[a], pos[b])
        t = (pos[target[0]], pos[target[1]])
        if not closure_contains_edge(sub, h, t):
            rep.violations.append(f"target {target}: not in closure of witness")
    return rep


def check_aizenman_lebowitz(
    witnesses: dict[Edge, WitnessRecord], trace: ClosureTrace, h: Graph
) -> Report:
    rep = Report(name="aizenman-lebowitz")
    v_h, e_h = h.n, h.edge_count
    maxima = [0]  # M_0
    for rnd in trace.rounds:
        m_t = max(witnesses[e].size for e, _ in rnd.added)
        maxima.append(max(m_t, maxima[-1]))
    rep.checked = len(maxima) - 1
    if len(maxima) > 1 and maxima[1] != v_h - 2:
        rep.violations.append(f"M_1 = {maxima[1]} != v_H - 2 = {v_h - 2}")
    for t in range(1, len(maxima) - 1):
        if maxima[t + 1] > v_h - 2 + (e_h - 1) * maxima[t]:
            rep.violations.append(
                f"M_{t+1} = {maxima[t+1]} exceeds v_H-2+(e_H-1)M_{t}"
            )
    sizes = sorted({rec.size for rec in witnesses.values() if rec.size > 0})
    if sizes:
        top = sizes[-1]
        for k in range(1, top + 1):
            if not any(k <= s <= e_h * k for s in sizes):
                rep.violations.append(f"no witness size in [{k}, {e_h * k}]")
    rep.details["sizes"] = sizes
    return rep


def check_edge_lower_bound(
    witnesses: dict[Edge, WitnessRecord], stats: PatternStats
) -> Report:
    rep = Report(name="edge-lower-bound")
    hist: dict[tuple[int, Fraction], int] = {}
    for rec in witnesses.values():
        if rec.k < stats.v_h:
            continue
        rep.checked += 1
        assert rec.ell_star is not None
        if rec.ell_star < 0:
            rep.violations.append(
                f"target {rec.target}: {rec.edge_count} edges on k={rec.k} "
                f"vertices beats the lower bound by {-rec.ell_star}"
            )
        if rec.ell_lambda is not None:
            key = (rec.k, rec.ell_lambda)
            hist[key] = hist.get(key, 0) + 1
    rep.details["k_ell_histogram"] = hist
    rep.details["baseline"] = "lambda*(k-2)+1"
    return rep


def check_component_bound(rea: REATrace, stats: PatternStats) -> Report:
    rep = Report(name="component-bound")
    assert stats.lambda_star is not None
    for step in rea.steps:
        rep.checked += 1
        bound = stats.lambda_star * (step.component_vertices - stats.v_h) + stats.e_h - 1
        if step.component_nonred < bound:
            rep.violations.append(
                f"target {rea.target} step {step.j}: component has "
                f"{step.component_nonred} non-red edges < {bound}"
            )
    return rep


def check_case2_bound(
    rea: REATrace, record: WitnessRecord, stats: PatternStats
) -> Report:
    rep = Report(name="case2-bound")
    if stats.xi is None or stats.xi <= 0 or not stats.strictly_balanced:
        rep.applicable = False
        return rep
    if not rea.steps:
        return rep
    rep.checked = 1
    case2 = sum(1 for s in rea.steps if s.case == "case2")
    ell = record.ell_lambda
    assert ell is not None and ell >= 0
    bound = Fraction(record.k - 2, stats.v_h - 2) + ell / stats.xi_prime
    rep.details["case2_steps"] = case2
    rep.details["bound"] = bound
    if case2 > bound:
        rep.violations.append(
            f"target {rea.target}: {case2} Case-2 steps > bound {bound}"
        )
    return rep
