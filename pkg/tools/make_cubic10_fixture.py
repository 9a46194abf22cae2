"""Regenerate tests/fixtures/cubic10.g6: every cubic graph on 10 vertices.

Labelled cubic graphs are sampled from the pairing model until the number of
isomorphism classes reaches the census count (21 cubic graphs on 10 vertices,
19 of them connected; OEIS A005638 and A002851). Classes are written in a
canonical-ish order (connected first, then by graph6 string).
"""

import sys
from pathlib import Path

import networkx as nx
import numpy as np

from ramanujan_rg.graph import Graph, emit_graph6, is_connected

TOTAL, CONNECTED = 21, 19


def sample(rng, n=10, k=3):
    while True:
        stubs = rng.permutation(np.repeat(np.arange(n), k)).reshape(-1, 2)
        if (stubs[:, 0] == stubs[:, 1]).any():
            continue
        pairs = {tuple(sorted(p)) for p in stubs.tolist()}
        if len(pairs) == len(stubs):
            return nx.Graph(list(pairs))


def main(out: Path, max_samples: int = 2_000_000):
    rng = np.random.Generator(np.random.PCG64(20261015))
    buckets: dict[str, list[nx.Graph]] = {}
    found = 0
    for i in range(max_samples):
        g = sample(rng)
        h = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
        bucket = buckets.setdefault(h, [])
        if not any(nx.is_isomorphic(g, other) for other in bucket):
            bucket.append(g)
            found += 1
            if found == TOTAL:
                break
    graphs = [Graph(nx.to_numpy_array(g, nodelist=range(10)) > 0) for b in buckets.values() for g in b]
    connected = sum(is_connected(g) for g in graphs)
    print(f"{len(graphs)} classes after {i + 1} samples, {connected} connected", file=sys.stderr)
    assert (len(graphs), connected) == (TOTAL, CONNECTED)
    lines = sorted(((not is_connected(g), emit_graph6(g)) for g in graphs))
    out.write_text("".join(s + "\n" for _, s in lines))


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/cubic10.g6"))
