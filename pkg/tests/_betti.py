"""Shared Betti-consistency checker state, registered by conftest."""

from loctopo.graph import Graph, connected_components

BETTI_CHECKS = {"diagrams": 0, "violations": 0}

# one "[criterion N] PASS/FAIL: ..." line per acceptance criterion,
# echoed by the terminal-summary hook in conftest
CRITERION_LINES = []


def betti_checker(filt, diagram):
    n = len(filt.vertices)
    vidx = {v: i for i, v in enumerate(filt.vertices)}
    local = tuple(sorted(tuple(sorted((vidx[u], vidx[v])))
                         for u, v in filt.edges))
    b0 = len(connected_components(Graph(n, local))) if n else 0
    b1 = len(local) - n + b0
    BETTI_CHECKS["diagrams"] += 1
    ok = (diagram.count(dim=1) == b1
          and diagram.count(dim=0, kind="essential") == b0)
    if not ok:
        BETTI_CHECKS["violations"] += 1
        raise AssertionError(
            f"Betti mismatch: diagram has {diagram.count(dim=1)} 1D points "
            f"(want {b1}) and {diagram.count(dim=0, kind='essential')} "
            f"essential 0D points (want {b0})")
