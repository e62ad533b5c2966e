"""Feature-matrix serialization: CSV, JSON, and a little-endian binary.

All three formats carry the segment layout and the row ids (node index or
node pair) alongside the values, and all are byte-reproducible: floats in
the text formats use the shortest round-trip representation, the binary
format stores raw IEEE-754 doubles.

Binary layout (all integers little-endian):
    bytes 0..3   magic "LTF1"
    uint32       layout string length, then that many UTF-8 bytes of
                 "name:len,name:len,..."
    uint32       id arity (1 for nodes, 2 for pairs)
    uint32       rows, uint32 cols
    rows*arity   uint32 row ids
    rows*cols    float64 values, row-major
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .pipeline import FeatureMatrix

MAGIC = b"LTF1"


class FormatError(ValueError):
    pass


def _layout_str(layout) -> str:
    return ",".join(f"{name}:{length}" for name, length in layout)


def _parse_layout(s: str):
    segs = []
    for part in s.split(","):
        name, length = part.rsplit(":", 1)
        segs.append((name, int(length)))
    return tuple(segs)


def _id_columns(ids):
    arity = 2 if ids and isinstance(ids[0], tuple) else 1
    if arity == 1:
        return arity, [(int(i),) for i in ids]
    return arity, [(int(u), int(v)) for u, v in ids]


def write_csv(fm: FeatureMatrix, path: str) -> None:
    arity, idcols = _id_columns(fm.ids)
    cols = []
    for name, length in fm.layout:
        cols += [f"{name}_{i}" for i in range(length)]
    head = ["u", "v"] if arity == 2 else ["id"]
    with open(path, "w") as fh:
        fh.write(f"# layout: {_layout_str(fm.layout)}\n")
        fh.write(",".join(head + cols) + "\n")
        for idrow, row in zip(idcols, fm.values):
            cells = [str(i) for i in idrow] + [repr(float(x)) for x in row]
            fh.write(",".join(cells) + "\n")


def write_json(fm: FeatureMatrix, path: str) -> None:
    arity, idcols = _id_columns(fm.ids)
    doc = {"layout": [[n, l] for n, l in fm.layout],
           "ids": [list(i) if arity == 2 else i[0] for i in idcols],
           "values": [[float(x) for x in row] for row in fm.values]}
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def write_binary(fm: FeatureMatrix, path: str) -> None:
    arity, idcols = _id_columns(fm.ids)
    ls = _layout_str(fm.layout).encode()
    rows, cols = fm.values.shape
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(ls)))
        fh.write(ls)
        fh.write(struct.pack("<III", arity, rows, cols))
        flat_ids = [x for idrow in idcols for x in idrow]
        fh.write(struct.pack(f"<{len(flat_ids)}I", *flat_ids))
        fh.write(np.ascontiguousarray(fm.values, dtype="<f8").tobytes())


def read_binary(path: str):
    """(layout, ids, values) from the binary format; validates the header."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != MAGIC:
        raise FormatError(f"{path}: bad magic {data[:4]!r}")
    off = 4
    (lslen,) = struct.unpack_from("<I", data, off)
    off += 4
    layout = _parse_layout(data[off:off + lslen].decode())
    off += lslen
    arity, rows, cols = struct.unpack_from("<III", data, off)
    off += 12
    flat = struct.unpack_from(f"<{rows * arity}I", data, off)
    off += 4 * rows * arity
    if arity == 1:
        ids = tuple(flat)
    else:
        ids = tuple((flat[2 * i], flat[2 * i + 1]) for i in range(rows))
    values = np.frombuffer(data, dtype="<f8", count=rows * cols,
                           offset=off).reshape(rows, cols)
    expected = sum(l for _, l in layout)
    if cols != expected:
        raise FormatError(f"{path}: layout width {expected} != {cols} columns")
    return layout, ids, values


WRITERS = {"csv": write_csv, "json": write_json, "bin": write_binary}
