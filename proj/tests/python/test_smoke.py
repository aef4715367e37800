import math

import numpy as np
import pytest
from scipy import integrate, stats

rllab = pytest.importorskip("rllab")


def test_kl_matches_scipy_quadrature():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m1, m2 = rng.uniform(-3, 3, 2)
        s1, s2 = rng.uniform(0.2, 3, 2)
        p = stats.norm(m1, s1)
        q = stats.norm(m2, s2)
        ref, _ = integrate.quad(lambda x: p.pdf(x) * (p.logpdf(x) - q.logpdf(x)), -np.inf, np.inf, epsabs=1e-12)
        kl = rllab.kl_closed_form(rllab.DiagGaussian([m1], [s1]), rllab.DiagGaussian([m2], [s2]))
        assert kl == pytest.approx(ref, abs=1e-8)


def test_asymmetry_pair_and_grid():
    p, q = rllab.DiagGaussian([1.0], [0.05]), rllab.DiagGaussian([2.0], [1.0])
    fwd, rev, diff = rllab.kl_asymmetry(p, q)
    assert diff == pytest.approx(fwd - rev, rel=1e-12)
    assert rllab.asymmetry_difference(p, q) == pytest.approx(diff, rel=1e-9)
    cells = rllab.asymmetry_grid(1.0, 2.0, 0.01, 10.0, 50, "log")
    assert len(cells) == 2500
    assert max(c[4] for c in cells) >= 1e4


def test_correntropy_and_cim():
    k = rllab.Kernel("gaussian", 1.0)
    assert k.peak() == 1.0
    assert rllab.correntropy(k, [[0.0], [1.0]], [[0.0], [0.0]]) == pytest.approx((1 + math.exp(-0.5)) / 2)
    assert rllab.cim(k, [[0.0], [1.0]], [[0.0], [0.0]]) == pytest.approx(math.sqrt((1 - math.exp(-0.5)) / 2))
    assert rllab.cim(k, [[0.3, 1.0]], [[0.3, 1.0]]) == 0.0
    with pytest.raises(ValueError):
        rllab.Kernel("gaussian", 0.0)


def test_silverman_and_taylor():
    x = np.random.default_rng(1).normal(size=100)
    x = (x - x.mean()) / x.std(ddof=1)
    assert rllab.silverman_bandwidth(list(x)) == pytest.approx(1.06 * 100 ** -0.2, rel=1e-12)
    assert rllab.gaussian_taylor_partial_sum(1.5, 1.0, 20) == pytest.approx(math.exp(-1.125), abs=1e-9)


def test_environment_steps():
    th, thd, r = rllab.pendulum_step(math.pi, 0.0, 0.0)
    assert r == pytest.approx(-math.pi**2)
    assert abs(thd) < 1e-12
    assert rllab.pointmass_step(0.0, 1.0, 0.0)[0] == pytest.approx(0.1)


def test_beta_controller():
    assert rllab.adaptive_beta_update(0.5, 0.05, 0.1) == 0.25
    assert rllab.adaptive_beta_update(0.5, 0.2, 0.1) == 1.0
    assert rllab.adaptive_beta_update(0.5, 0.1, 0.1) == 0.5


def test_short_training_is_deterministic():
    c = rllab.PenaltyConfig()
    c.variant = "cim"
    c.hidden = [8]
    a = rllab.train(c, "pointmass", 3, 4)
    b = rllab.train(c, "pointmass", 3, 4)
    assert len(a) == 4
    strip = lambda rs: [{k: v for k, v in r.items() if k != "wall_seconds"} for r in rs]
    assert strip(a) == strip(b)
    assert a[-1]["env_steps"] == 4 * 32


def test_cli_and_verify(tmp_path):
    code, out, _ = rllab.run_cli(["verify", "--suite", "taylor"])
    assert code == 0 and "taylor" in out
    code, _, err = rllab.run_cli(["train", "--env", "pendulum"])
    assert code == 2 and "--algo" in err
    code, _, _ = rllab.run_cli(["diag-asymmetry", "--grid", "2", "--out", str(tmp_path / "g.csv")])
    assert code == 0
    assert len((tmp_path / "g.csv").read_text().splitlines()) == 5
    assert rllab.run_suite("controller")["passed"]
    assert "kl" in rllab.suite_names()
