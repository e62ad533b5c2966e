"""Ground-truth extended persistence via boundary-matrix reduction.

The extended filtration is the ascending complex followed by the relative
(coned) copies of all simplices in descending order. Columns are reduced
left to right over GF(2); pairs are classified by the cell types of the
birth row and death column. Intended as an oracle for small inputs only.
"""

from __future__ import annotations

from .filters import Filtration
from .persistence import (ESSENTIAL, ORDINARY, PersistenceDiagram,
                          PersistencePoint)


class OracleCapExceeded(RuntimeError):
    pass


def matrix_reduction_epd(filt: Filtration, cap: int = 500) -> PersistenceDiagram:
    """Reduce the extended boundary matrix of ``filt`` over GF(2).

    Point conventions match :func:`loctopo.persistence.extended_pd`:
    zero-persistence finite 0D pairs are dropped, essential 0D and 1D
    points are always kept.
    """
    nv, ne = len(filt.vertices), len(filt.edges)
    if nv + ne > cap:
        raise OracleCapExceeded(f"{nv + ne} simplices exceed oracle cap {cap}")
    vidx = filt._vindex
    edges_local = [(vidx[u], vidx[v]) for u, v in filt.edges]

    # cells: ("av"|"ae"|"dv"|"de", index), in filtration order
    cells = [("av" if d == 0 else "ae", i) for _, d, i in filt.ascending_order()]
    cells += [("dv" if d == 0 else "de", i) for _, d, i in filt.descending_order()]
    pos = {c: k for k, c in enumerate(cells)}

    def value(cell):
        typ, i = cell
        return {"av": filt.asc_v, "ae": filt.asc_e,
                "dv": filt.desc_v, "de": filt.desc_e}[typ][i]

    def boundary(cell):
        typ, i = cell
        if typ == "av":
            return 0
        if typ == "ae":
            u, v = edges_local[i]
            return (1 << pos[("av", u)]) | (1 << pos[("av", v)])
        if typ == "dv":
            return 1 << pos[("av", i)]
        u, v = edges_local[i]
        return (1 << pos[("ae", i)]) | (1 << pos[("dv", u)]) | (1 << pos[("dv", v)])

    low_to_col = {}
    columns = {}
    pairs = []
    for k, cell in enumerate(cells):
        col = boundary(cell)
        while col:
            low = col.bit_length() - 1
            if low not in low_to_col:
                break
            col ^= columns[low_to_col[low]]
        if col:
            low = col.bit_length() - 1
            low_to_col[low] = k
            columns[k] = col
            pairs.append((cells[low], cell))

    points = []
    for birth_cell, death_cell in pairs:
        b, d = value(birth_cell), value(death_cell)
        bt, dt = birth_cell[0], death_cell[0]
        if bt == "av" and dt == "ae":
            if b != d:
                points.append(PersistencePoint(b, d, 0, ORDINARY))
        elif bt == "av" and dt == "dv":
            points.append(PersistencePoint(b, d, 0, ESSENTIAL))
        elif bt == "ae" and dt == "de":
            points.append(PersistencePoint(b, d, 1, ESSENTIAL))
        elif bt == "dv" and dt == "de":
            if b != d:
                points.append(PersistencePoint(b, d, 0, ORDINARY))
        else:  # pragma: no cover - no other pair types arise on graphs
            raise AssertionError(f"unexpected pair {birth_cell} -> {death_cell}")
    return PersistenceDiagram(tuple(sorted(points)))
