import json
import logging
import os

import numpy as np
import pytest

from loctopo.graph import from_edge_list
from loctopo.lab import random_regular
from loctopo.matrixio import (FormatError, read_binary, write_binary,
                              write_csv, write_json)
from loctopo.pipeline import (ConfigError, DiagramCache, PipelineConfig,
                              default_k, graph_hash, node_features,
                              pair_features)


def test_config_validation():
    with pytest.raises(ConfigError):
        PipelineConfig(task="no-such-task")
    with pytest.raises(ConfigError):
        PipelineConfig(filter_name="tuple-distance")  # pair filter, node task
    with pytest.raises(ConfigError):
        PipelineConfig(task="pair-features", filter_name="spd")
    with pytest.raises(ConfigError):
        PipelineConfig(k=0)
    with pytest.raises(ConfigError):
        PipelineConfig(task="pair-features", filter_name="pairwise-sum",
                       piplus=True)
    with pytest.raises(ConfigError):
        PipelineConfig(workers=0)


def test_default_k_by_density():
    sparse = random_regular(20, 3, seed=0)
    assert default_k(sparse) == 2
    dense = from_edge_list([(u, v) for u in range(12)
                            for v in range(u + 1, 12)], 12)
    assert default_k(dense) == 1


def test_isolated_node_zero_row():
    g = from_edge_list([(0, 1), (0, 2), (1, 2)], 4)  # vertex 3 isolated
    fm = node_features(g, PipelineConfig(k=1))
    assert not fm.values[3].any()
    assert fm.values[0].any()


def test_star_center_piplus_counts():
    g = from_edge_list([(0, i) for i in range(1, 5)], 5)
    fm = node_features(g, PipelineConfig(k=1, piplus=True))
    assert list(fm.values[0][25:]) == [1, 4, 0, 0, 4]


def test_pair_rows():
    g = from_edge_list([(0, 1), (0, 2), (1, 2), (3, 4)], 6)
    cfg = PipelineConfig(task="pair-features", filter_name="pairwise-sum", k=1)
    fm = pair_features(g, [(0, 1), (0, 3), (0, 1)], cfg)
    assert fm.values[0].any()              # triangle pair sees a 1D point
    assert not fm.values[1].any()          # disconnected pair: zero row
    assert np.array_equal(fm.values[0], fm.values[2])  # duplicate pair
    with pytest.raises(ConfigError):
        pair_features(g, [(0, 0)], cfg)


def test_worker_determinism():
    g = random_regular(60, 3, seed=5)
    fm1 = node_features(g, PipelineConfig(k=2, piplus=True, workers=1))
    fm8 = node_features(g, PipelineConfig(k=2, piplus=True, workers=8))
    assert np.array_equal(fm1.values, fm8.values)
    assert fm1.layout == fm8.layout and fm1.ids == fm8.ids


def test_cache_hits_and_invalidation(tmp_path):
    g = random_regular(20, 3, seed=2)
    cdir = str(tmp_path / "cache")
    cfg = PipelineConfig(k=1, cache_dir=cdir)
    first = node_features(g, cfg)
    assert first.stats["diagrams_computed"] == 20
    second = node_features(g, cfg)
    assert second.stats["diagrams_computed"] == 0
    assert second.stats["cache_hits"] == 20
    assert np.array_equal(first.values, second.values)
    # changed k: different config hash, full recompute
    third = node_features(g, PipelineConfig(k=2, cache_dir=cdir))
    assert third.stats["diagrams_computed"] == 20
    # flipped edge: different graph hash, full recompute
    edges = list(g.edges)
    g2 = from_edge_list(edges[:-1], g.num_vertices)
    fourth = node_features(g2, PipelineConfig(k=1, cache_dir=cdir))
    assert fourth.stats["diagrams_computed"] == 20
    assert graph_hash(g) != graph_hash(g2)


def test_cache_corruption_recovers(tmp_path, caplog):
    g = from_edge_list([(0, 1), (1, 2), (0, 2)], 3)
    cdir = str(tmp_path / "cache")
    cfg = PipelineConfig(k=1, cache_dir=cdir)
    first = node_features(g, cfg)
    cache = DiagramCache(cdir, g, cfg)
    path = cache._path(1)
    with open(path, "w") as fh:
        fh.write("{not json")
    with caplog.at_level(logging.WARNING, logger="loctopo"):
        again = node_features(g, cfg)
    assert any("corrupt cache entry" in r.message for r in caplog.records)
    assert again.stats["diagrams_computed"] == 1
    assert np.array_equal(first.values, again.values)
    with open(path) as fh:
        json.load(fh)  # overwritten with a valid entry


def test_matrix_roundtrip_formats(tmp_path):
    g = random_regular(10, 3, seed=9)
    fm = node_features(g, PipelineConfig(k=1, piplus=True))
    bpath = str(tmp_path / "m.bin")
    write_binary(fm, bpath)
    layout, ids, values = read_binary(bpath)
    assert layout == fm.layout and ids == fm.ids
    assert values.tobytes() == fm.values.tobytes()

    cpath = str(tmp_path / "m.csv")
    write_csv(fm, cpath)
    with open(cpath) as fh:
        lines = fh.read().splitlines()
    assert lines[0].startswith("# layout: ")
    rows = [line.split(",") for line in lines[2:]]
    parsed = np.array([[float(x) for x in r[1:]] for r in rows])
    assert np.array_equal(parsed, fm.values)  # repr round-trips exactly

    jpath = str(tmp_path / "m.json")
    write_json(fm, jpath)
    with open(jpath) as fh:
        doc = json.load(fh)
    assert np.array_equal(np.array(doc["values"]), fm.values)


def test_binary_rejects_bad_magic(tmp_path):
    p = tmp_path / "bad.bin"
    p.write_bytes(b"XXXX\x00\x00\x00\x00")
    with pytest.raises(FormatError):
        read_binary(str(p))


def test_multi_filter_width():
    g = random_regular(12, 3, seed=4)
    fm = node_features(g, PipelineConfig(filter_name="multi", k=1),
                       nodes=[0, 1])
    assert fm.values.shape == (2, 75)
    assert [n for n, _ in fm.layout] == \
        ["pi[hks:0.1]", "pi[hks:10]", "pi[curvature-distance]"]


def test_cold_warm_cache_bytes_identical(tmp_path):
    g = random_regular(16, 3, seed=6)
    cdir = str(tmp_path / "c")
    cfg = PipelineConfig(k=2, cache_dir=cdir)
    cold = node_features(g, cfg)
    warm = node_features(g, cfg)
    a, b = str(tmp_path / "a.bin"), str(tmp_path / "b.bin")
    write_binary(cold, a)
    write_binary(warm, b)
    with open(a, "rb") as fa, open(b, "rb") as fb:
        assert fa.read() == fb.read()
