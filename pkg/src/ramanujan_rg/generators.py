"""Constructors for connected regular input graphs.

Generator specs have a short textual form used on the command line::

    cycle:5   complete:5   bipartite:3   petersen   hypercube:3
    circulant:8,(1,2)   random:10,3,seed=42

``random_regular`` draws from numpy's PCG64 generator seeded with the given
64-bit seed, so a (n, k, seed) triple names the same graph on every platform
running the same numpy stream version.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import GenerationFailure, InvalidParameters
from .graph import Graph, is_connected

RETRY_BUDGET = 10_000


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameters(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), label=f"cycle:{n}")


def complete(n: int) -> Graph:
    if n < 2:
        raise InvalidParameters(f"complete graph needs n >= 2, got {n}")
    adj = ~np.eye(n, dtype=bool)
    return Graph(adj, label=f"complete:{n}")


def complete_bipartite_balanced(t: int) -> Graph:
    if t < 1:
        raise InvalidParameters(f"K_{{t,t}} needs t >= 1, got {t}")
    adj = np.zeros((2 * t, 2 * t), dtype=bool)
    adj[:t, t:] = True
    adj[t:, :t] = True
    return Graph(adj, label=f"bipartite:{t}")


def circulant(n: int, connections: Iterable[int]) -> Graph:
    steps = sorted(set(int(c) for c in connections))
    if not steps or any(not 1 <= s <= n // 2 for s in steps):
        raise InvalidParameters(f"circulant steps must be a nonempty subset of 1..{n // 2}, got {steps}")
    adj = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    for s in steps:
        adj[idx, (idx + s) % n] = True
        adj[(idx + s) % n, idx] = True
    label = f"circulant:{n},({','.join(map(str, steps))})"
    return Graph(adj, label=label)


def hypercube(dim: int) -> Graph:
    if dim < 1:
        raise InvalidParameters(f"hypercube needs dim >= 1, got {dim}")
    n = 1 << dim
    idx = np.arange(n)
    diff = idx[:, None] ^ idx[None, :]
    adj = (diff & (diff - 1)) == 0
    adj &= diff != 0
    return Graph(adj, label=f"hypercube:{dim}")


def petersen() -> Graph:
    """Kneser graph K(5, 2): 2-subsets of {0..4}, adjacent when disjoint."""
    subsets = list(itertools.combinations(range(5), 2))
    edges = [
        (i, j)
        for i, a in enumerate(subsets)
        for j, b in enumerate(subsets)
        if i < j and not set(a) & set(b)
    ]
    return Graph.from_edges(10, edges, label="petersen")


def _pair_stubs(n: int, k: int, rng: np.random.Generator):
    """One run of the pairing model; ``None`` on a dead end.

    Stubs that would form a loop or a repeated edge are returned to the pool
    and re-paired among themselves.
    """
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(n), k)
    stalls = 0
    while len(stubs):
        stubs = rng.permutation(stubs)
        leftover = []
        for u, v in stubs.reshape(-1, 2).tolist():
            if u > v:
                u, v = v, u
            if u != v and (u, v) not in edges:
                edges.add((u, v))
            else:
                leftover.extend((u, v))
        if len(leftover) == len(stubs):
            stalls += 1
            pool = sorted(set(leftover))
            free = any((a, b) not in edges for a, b in itertools.combinations(pool, 2))
            if not free or stalls > 100:
                return None
        stubs = np.array(leftover, dtype=np.int64)
    return edges


def random_regular(n: int, k: int, seed: int = 0, max_tries: int = RETRY_BUDGET) -> Graph:
    """Random connected k-regular graph on n vertices from the pairing model.

    Samples with a loop or repeated edge that cannot be repaired by
    re-pairing, and disconnected samples, are discarded whole.
    """
    if k < 2 or n < k + 1 or (n * k) % 2:
        raise InvalidParameters(f"no connected {k}-regular graph on {n} vertices for the pairing model")
    if not 0 <= seed < 1 << 64:
        raise InvalidParameters(f"seed must be a 64-bit unsigned integer, got {seed}")
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(max_tries):
        edges = _pair_stubs(n, k, rng)
        if edges is None:
            continue
        g = Graph.from_edges(n, sorted(edges), label=f"random:{n},{k},seed={seed}")
        if is_connected(g):
            return g
    raise GenerationFailure(f"no connected simple {k}-regular graph on {n} vertices after {max_tries} tries")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    parameters: tuple[int, ...] = ()
    seed: int = 0

    def build(self) -> Graph:
        p = self.parameters
        try:
            if self.family == "cycle":
                (n,) = p
                g = cycle(n)
            elif self.family == "complete":
                (n,) = p
                g = complete(n)
            elif self.family == "complete_bipartite_balanced":
                (t,) = p
                g = complete_bipartite_balanced(t)
            elif self.family == "petersen":
                if p:
                    raise InvalidParameters("petersen takes no parameters")
                g = petersen()
            elif self.family == "hypercube":
                (dim,) = p
                g = hypercube(dim)
            elif self.family == "circulant":
                n, *steps = p
                g = circulant(n, steps)
            elif self.family == "random_regular":
                n, k = p
                g = random_regular(n, k, self.seed)
            else:
                raise InvalidParameters(f"unknown generator family {self.family!r}")
        except ValueError as exc:
            if isinstance(exc, InvalidParameters):
                raise
            raise InvalidParameters(f"wrong number of parameters for {self.family}: {p}") from None
        return g.with_label(str(self))

    def __str__(self):
        p = self.parameters
        if self.family == "petersen":
            return "petersen"
        if self.family == "complete_bipartite_balanced":
            return f"bipartite:{p[0]}"
        if self.family == "circulant":
            return f"circulant:{p[0]},({','.join(map(str, p[1:]))})"
        if self.family == "random_regular":
            return f"random:{p[0]},{p[1]},seed={self.seed}"
        return f"{self.family}:{','.join(map(str, p))}"


_ALIASES = {
    "cycle": "cycle",
    "c": "cycle",
    "complete": "complete",
    "k": "complete",
    "bipartite": "complete_bipartite_balanced",
    "complete_bipartite_balanced": "complete_bipartite_balanced",
    "kbb": "complete_bipartite_balanced",
    "petersen": "petersen",
    "hypercube": "hypercube",
    "q": "hypercube",
    "circulant": "circulant",
    "random": "random_regular",
    "random_regular": "random_regular",
}

_SEED_RE = re.compile(r"seed\s*=\s*(\d+)$")


def parse_generator_spec(text: str) -> GeneratorSpec:
    """Parse ``family[:params]`` (see module docstring for the grammar)."""
    head, _, rest = text.strip().partition(":")
    family = _ALIASES.get(head.strip().lower())
    if family is None:
        raise InvalidParameters(f"unknown generator family {head!r}")
    seed = 0
    params: list[int] = []
    rest = rest.replace("(", ",").replace(")", ",").replace("{", ",").replace("}", ",")
    for token in filter(None, (t.strip() for t in rest.split(","))):
        m = _SEED_RE.match(token)
        if m:
            seed = int(m.group(1))
            continue
        try:
            params.append(int(token))
        except ValueError:
            raise InvalidParameters(f"bad parameter {token!r} in generator spec {text!r}") from None
    if family == "circulant" and len(params) < 2:
        raise InvalidParameters(f"circulant needs n and at least one step: {text!r}")
    return GeneratorSpec(family, tuple(params), seed)


def generate(text: str) -> Graph:
    return parse_generator_spec(text).build()
