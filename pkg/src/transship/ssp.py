"""Flow profiles via successive shortest augmenting paths.

For a terminal subset S, the question "how much flow can leave S's sources
for the sinks outside S within deadline theta" is answered by a classic
construction: attach a super source to the sources inside S and a super sink
to the sinks outside S, then repeatedly augment along a shortest path in the
residual network, using transit time as the arc length.  Each augmentation
yields a segment (length, amount): a path family of that transit length able
to carry that flow rate.  Sending flow along each family from time 0 until
the deadline minus its length realizes the maximum:

    value_by(theta) = sum over segments with length <= theta
                      of amount * (theta - length).

The segment lengths are nondecreasing, so the value is piecewise linear and
convex in the deadline.  Each segment carries a certificate: a -1/0/+1 vector
over the original arcs (forward/backward use on the augmenting path) whose
inner product with the transit times reproduces the segment length exactly.

Everything here is exact rational arithmetic; ties in the shortest-path
search are broken by node id so repeated runs produce identical profiles.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from fractions import Fraction

from .core import Arc, FlowNetwork, Rat, TerminalSet
from .errors import ProfileTruncated

__all__ = [
    "ExtendedNetwork",
    "build_extended",
    "Segment",
    "FlowProfile",
    "compute_profile",
    "ProfileCache",
]


@dataclass(frozen=True)
class ExtendedNetwork:
    """Base network plus super terminals for one subset query.

    Auxiliary arcs get transit 0 and capacity ``base.capacity_bound``, which
    is as good as infinite: any super-source/super-sink flow has to cross at
    least one original arc.
    """

    base: FlowNetwork
    subset: TerminalSet
    node_count: int
    arcs: tuple[Arc, ...]
    original_count: int
    super_source: int
    super_sink: int

    @property
    def aux_arcs(self) -> tuple[Arc, ...]:
        return self.arcs[self.original_count:]


def build_extended(network: FlowNetwork, subset: TerminalSet) -> ExtendedNetwork:
    """Wire a super source to S's sources and S's outside sinks to a super sink."""
    if subset.width != network.k:
        raise ValueError("subset width %d does not match %d terminals"
                         % (subset.width, network.k))
    n = network.node_count
    s, t = n, n + 1
    big = network.capacity_bound
    arcs = list(network.arcs)
    n_src = len(network.sources)
    for i, v in enumerate(network.sources):
        if i in subset:
            arcs.append(Arc(s, v, big, Fraction(0)))
    for j, v in enumerate(network.sinks):
        if (n_src + j) not in subset:
            arcs.append(Arc(v, t, big, Fraction(0)))
    return ExtendedNetwork(
        base=network,
        subset=subset,
        node_count=n + 2,
        arcs=tuple(arcs),
        original_count=len(network.arcs),
        super_source=s,
        super_sink=t,
    )


@dataclass(frozen=True)
class Segment:
    """One augmentation: a path length, its flow amount, and its certificate."""

    length: Rat
    amount: Rat
    certificate: tuple[int, ...]


@dataclass(frozen=True)
class FlowProfile:
    """Ordered augmentation segments for one terminal subset.

    ``exhausted`` records whether the search ran until no augmenting path
    remained; only then does the segment list describe the value function
    for every deadline.
    """

    segments: tuple[Segment, ...]
    exhausted: bool

    def max_static_value(self) -> Rat:
        """Largest sustainable flow rate (the static max-flow value)."""
        if not self.exhausted:
            raise ProfileTruncated("profile was truncated; static maximum unknown")
        return sum((seg.amount for seg in self.segments), Fraction(0))

    def certifies(self, theta: Rat) -> bool:
        """True when the profile pins down the value function at ``theta``."""
        if self.exhausted:
            return True
        return bool(self.segments) and theta < self.segments[-1].length


class _Residual:
    """Paired-entry residual graph with node potentials."""

    __slots__ = ("n", "adj", "potential")

    def __init__(self, ext: ExtendedNetwork):
        self.n = ext.node_count
        self.adj = [[] for _ in range(self.n)]
        # entry: [to, cap, cost, rev_index, original_arc_index, direction]
        for idx, a in enumerate(ext.arcs):
            orig = idx if idx < ext.original_count else None
            fwd = [a.head, a.capacity, a.transit, len(self.adj[a.head]), orig, 1]
            bwd = [a.tail, Fraction(0), -a.transit, len(self.adj[a.tail]), orig, -1]
            self.adj[a.tail].append(fwd)
            self.adj[a.head].append(bwd)
        self.potential = [Fraction(0)] * self.n

    def shortest_path(self, s: int, t: int):
        """Dijkstra on reduced costs; returns (true length, parent map) or None.

        Equal-distance heap ties resolve by node id, and parents only change
        on strict improvement, so the chosen path is a deterministic function
        of the residual state.
        """
        dist = [None] * self.n
        parent = [None] * self.n
        dist[s] = Fraction(0)
        heap = [(Fraction(0), s)]
        pot = self.potential
        while heap:
            d, u = heapq.heappop(heap)
            if dist[u] is not None and d > dist[u]:
                continue
            for i, entry in enumerate(self.adj[u]):
                if entry[1] <= 0:
                    continue
                v = entry[0]
                nd = d + entry[2] + pot[u] - pot[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    parent[v] = (u, i)
                    heapq.heappush(heap, (nd, v))
        if dist[t] is None:
            return None
        reach_t = dist[t]
        for v in range(self.n):
            if dist[v] is None or dist[v] > reach_t:
                pot[v] += reach_t
            else:
                pot[v] += dist[v]
        return pot[t] - pot[s], parent

    def augment(self, s: int, t: int, parent) -> tuple[Rat, dict]:
        """Push the bottleneck along the parent path; return (amount, arc uses)."""
        bottleneck = None
        v = t
        while v != s:
            u, i = parent[v]
            cap = self.adj[u][i][1]
            if bottleneck is None or cap < bottleneck:
                bottleneck = cap
            v = u
        uses = {}
        v = t
        while v != s:
            u, i = parent[v]
            entry = self.adj[u][i]
            entry[1] -= bottleneck
            self.adj[entry[0]][entry[3]][1] += bottleneck
            if entry[4] is not None:
                uses[entry[4]] = entry[5]
            v = u
        return bottleneck, uses


def compute_profile(network: FlowNetwork, subset: TerminalSet) -> FlowProfile:
    """Run successive shortest paths to exhaustion for one subset."""
    ext = build_extended(network, subset)
    res = _Residual(ext)
    m = ext.original_count
    segments = []
    while True:
        found = res.shortest_path(ext.super_source, ext.super_sink)
        if found is None:
            break
        length, parent = found
        amount, uses = res.augment(ext.super_source, ext.super_sink, parent)
        certificate = tuple(uses.get(i, 0) for i in range(m))
        # A simple path crosses each original arc at most once, so the
        # certificate must reproduce the length exactly.
        assert sum((network.arcs[i].transit * c for i, c in enumerate(certificate)),
                   Fraction(0)) == length
        assert amount > 0
        if segments:
            assert length >= segments[-1].length
        segments.append(Segment(length, amount, certificate))
    return FlowProfile(segments=tuple(segments), exhausted=True)


class ProfileCache:
    """Memoizes one profile per terminal subset of a fixed instance.

    Profiles are immutable, so concurrent readers are safe; a lock makes
    insertion exclusive.  Keys are the subset bit patterns.
    """

    def __init__(self, network: FlowNetwork):
        self.network = network
        self._profiles: dict[int, FlowProfile] = {}
        self._lock = threading.Lock()

    def profile(self, subset: TerminalSet | int) -> FlowProfile:
        bits = subset.bits if isinstance(subset, TerminalSet) else subset
        hit = self._profiles.get(bits)
        if hit is not None:
            return hit
        prof = compute_profile(self.network, TerminalSet(bits, self.network.k))
        with self._lock:
            return self._profiles.setdefault(bits, prof)

    def __len__(self) -> int:
        return len(self._profiles)
