"""Degree and node-betweenness centrality.

Betweenness follows the classic pair-dependency accumulation scheme
(Brandes) over link-length-weighted shortest paths, with exact rational
arithmetic so results can be compared against a brute-force oracle
without tolerance games. Unit lengths degrade to hop-count paths.

Normalization: the reference per-node table for NSFNET counts, for each
node i, the fraction of all n(n-1)/2 node pairs whose shortest paths
involve i, *including* the pairs in which i is itself an endpoint.
Equivalently:

    NBC(i) = (C_b(i) + (n - 1)) / (n (n - 1) / 2)

where C_b(i) is the raw interior betweenness (sum over s != i != t of
sigma_st(i) / sigma_st). This affine form was derived empirically: it is
the unique standard-shaped normalization that reproduces that table, and
it conveniently bounds values in (0, 1].
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .topology import Topology


class CentralityKind(Enum):
    DEGREE = "degree"
    BETWEENNESS = "betweenness"


@dataclass(frozen=True)
class CentralityVector:
    values: dict[int, float]
    kind: CentralityKind


def degree_centrality(t: Topology) -> CentralityVector:
    return CentralityVector({n: float(t.degree(n)) for n in t.nodes()},
                            CentralityKind.DEGREE)


def _shortest_path_dag(t: Topology, source: int, weighted: bool):
    """Dijkstra from source: returns (order, predecessors, sigma).

    Weights are link lengths; with weighted=False every link counts 1.
    sigma counts all shortest paths exactly (integer arithmetic).
    """
    dist: dict[int, float] = {source: 0}
    sigma: dict[int, int] = {n: 0 for n in t.nodes()}
    sigma[source] = 1
    preds: dict[int, list[int]] = {n: [] for n in t.nodes()}
    done: set[int] = set()
    order: list[int] = []
    pq: list[tuple[float, int]] = [(0, source)]
    while pq:
        d, u = heapq.heappop(pq)
        if u in done:
            continue
        done.add(u)
        order.append(u)
        for v in t.neighbors(u):
            w = t.length(u, v) if weighted else 1
            nd = d + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                sigma[v] = sigma[u]
                preds[v] = [u]
                heapq.heappush(pq, (nd, v))
            elif nd == dist[v]:
                sigma[v] += sigma[u]
                preds[v].append(u)
    return order, preds, sigma


def raw_betweenness(t: Topology, weighted: bool = True) -> dict[int, Fraction]:
    """Interior pair-dependency betweenness, exact rationals.

    raw[i] = sum over unordered pairs {s, t} with s != i != t of
    sigma_st(i) / sigma_st.
    """
    raw = {n: Fraction(0) for n in t.nodes()}
    for s in t.nodes():
        order, preds, sigma = _shortest_path_dag(t, s, weighted)
        delta = {n: Fraction(0) for n in t.nodes()}
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += Fraction(sigma[v], sigma[w]) * (1 + delta[w])
            if w != s:
                raw[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    return {n: v / 2 for n, v in raw.items()}


def betweenness_centrality(t: Topology, weighted: bool = True) -> CentralityVector:
    n = t.node_count
    pairs = Fraction(n * (n - 1), 2)
    raw = raw_betweenness(t, weighted)
    vals = {i: float((r + (n - 1)) / pairs) for i, r in raw.items()}
    return CentralityVector(vals, CentralityKind.BETWEENNESS)


def rank_nodes(c: CentralityVector, k: int, order: str = "lowest") -> list[int]:
    """k node ids by value; ties broken by ascending node index."""
    n = len(c.values)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    if order not in ("lowest", "highest"):
        raise ValueError(f"order must be 'lowest' or 'highest', got {order!r}")
    rev = order == "highest"
    ranked = sorted(c.values, key=lambda i: ((-c.values[i] if rev else c.values[i]), i))
    return ranked[:k]
