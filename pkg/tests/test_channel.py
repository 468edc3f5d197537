import json

import numpy as np
import pytest

from mixadc.channel import (
    BadKappa,
    ChannelMatrix,
    DimensionError,
    FormatError,
    gen_ill_conditioned,
    gen_rayleigh,
    load_channel,
    save_channel,
)
from mixadc.linalg import condition_number


def test_rayleigh_scalar_reproducible():
    a, b = gen_rayleigh(1, 3), gen_rayleigh(1, 3)
    assert a.h.shape == (1, 1)
    np.testing.assert_array_equal(a.h, b.h)


def test_rayleigh_kappa_recorded():
    ch = gen_rayleigh(8, 11)
    assert np.isfinite(ch.kappa)
    assert ch.kappa == pytest.approx(condition_number(ch.h), rel=1e-12)


def test_rayleigh_pooled_variance():
    # 2% is about two standard errors at 1e4 samples; seeds are fixed
    pooled = np.concatenate([gen_rayleigh(10, s).h.ravel() for s in range(1000, 1100)])
    assert pooled.size == 10_000
    assert np.mean(np.abs(pooled) ** 2) == pytest.approx(1.0, rel=0.02)


def test_ill_conditioned_hits_target():
    ch = gen_ill_conditioned(8, 1000, seed=4)
    assert 990 <= condition_number(ch.h) <= 1010
    assert ch.model_tag == "synthetic-ill-conditioned"


@pytest.mark.parametrize("kappa", [500, 1000, 5000])
@pytest.mark.parametrize("n", [4, 8, 12])
def test_ill_conditioned_grid(n, kappa):
    ch = gen_ill_conditioned(n, kappa, seed=n * kappa)
    s = np.linalg.svd(ch.h, compute_uv=False)
    assert s[0] / s[-1] == pytest.approx(kappa, rel=0.01)


def test_ill_conditioned_kappa_one_is_scaled_unitary():
    ch = gen_ill_conditioned(2, 1.0, seed=1)
    assert ch.kappa == pytest.approx(1.0, abs=1e-9)
    g = ch.h.conj().T @ ch.h
    np.testing.assert_allclose(g, g[0, 0] * np.eye(2), atol=1e-12)


def test_ill_conditioned_normalization():
    vals = [np.sum(np.abs(gen_ill_conditioned(8, 1000, s).h) ** 2) / 64 for s in range(100)]
    assert 0.95 <= np.mean(vals) <= 1.05


def test_bad_kappa():
    with pytest.raises(BadKappa):
        gen_ill_conditioned(4, 0.5, seed=0)


@pytest.mark.parametrize("gen", [lambda s: gen_rayleigh(4, s),
                                 lambda s: gen_ill_conditioned(4, 800, s)])
def test_distinct_seeds_distinct_channels(gen):
    seen = {gen(s).h.tobytes() for s in range(100)}
    assert len(seen) == 100
    np.testing.assert_array_equal(gen(42).h, gen(42).h)


def test_round_trip(tmp_path):
    ch = gen_ill_conditioned(6, 1000, seed=2)
    path = tmp_path / "h.chan"
    save_channel(ch, path)
    back = load_channel(path)
    assert np.max(np.abs(back.h - ch.h)) <= 1e-15
    assert back.seed == 2 and back.model_tag == ch.model_tag
    assert back.kappa == pytest.approx(ch.kappa, rel=1e-9)


def test_file_is_self_describing(tmp_path):
    path = tmp_path / "h.chan"
    save_channel(gen_rayleigh(2, 5), path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"n", "seed", "model_tag", "h"}
    assert np.asarray(doc["h"]).shape == (2, 2, 2)


def test_hand_written_identity(tmp_path):
    path = tmp_path / "eye.chan"
    path.write_text('{"n": 2, "seed": 0, "model_tag": "file",'
                    ' "h": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}')
    assert load_channel(path).kappa == 1.0


def test_non_square_rejected(tmp_path):
    path = tmp_path / "bad.chan"
    row = [[1.0, 0.0], [0.0, 0.0]]
    path.write_text(json.dumps({"n": 3, "seed": 0, "model_tag": "file", "h": [row] * 3}))
    with pytest.raises(DimensionError):
        load_channel(path)


@pytest.mark.parametrize("text", ["not json", '{"n": 1}', '{"h": [[1, 2]]}'])
def test_malformed_rejected(tmp_path, text):
    path = tmp_path / "bad.chan"
    path.write_text(text)
    with pytest.raises(FormatError):
        load_channel(path)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_channel(tmp_path / "nope.chan")


def test_kappa_mismatch_rejected():
    with pytest.raises(ValueError):
        ChannelMatrix(np.eye(2), kappa=3.0)
