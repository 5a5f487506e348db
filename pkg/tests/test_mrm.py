"""Test mvstack.mrm."""
from dataclasses import replace

from mvstack.data import CvConfig, LevelPlan, ViewHierarchy
from mvstack.errors import ConfigError
from mvstack.mrm import mrm, MrmQuery, MrmResult
from mvstack.stacking import mvs_fit
import numpy as np
import pytest
from utils import view_data

CV = CvConfig(k_outer=4, k_lambda=4, seed=2)


def test_mrm_query():
    """Test mvstack.mrm.MrmQuery."""
    test = MrmQuery(2)
    assert (test.level, test.a, test.b, test.constant) == (2, 0.0, 1.0, None)
    test = MrmQuery(3.0, a=1, b=0, constant=0.25)
    assert test.level == 3
    assert isinstance(test.level, int)
    assert test.constant == 0.25
    with pytest.raises(ConfigError):
        MrmQuery(2.5)
    with pytest.raises(ConfigError):
        MrmQuery(True)
    with pytest.raises(ConfigError):
        MrmQuery(2, a=0.5, b=0.5)


def test_mrm_gaussian():
    """Test mvstack.mrm.mrm against the coefficients of a linear meta-model."""
    data, labels = view_data(50, [3, 3, 4], np.r_[np.ones(3), -np.ones(3), np.zeros(4)], seed=1)
    model = mvs_fit(data, ViewHierarchy(labels), cv=CV)
    result = mrm(model, MrmQuery(2))
    assert isinstance(result, MrmResult)
    assert result.names == ("V1", "V2", "V3")
    assert result.level == 2
    assert np.allclose(result.constant, data.y.mean())
    # the meta-model is linear in its inputs
    assert np.allclose(result.values, model.top.beta)
    assert np.allclose(mrm(model, MrmQuery(2, a=1.0, b=3.0, constant=0.0)).values,
                       2 * model.top.beta)
    # views without meta coefficient have no effect
    assert np.all(result.values[model.top.beta == 0] == 0)

    with pytest.raises(ConfigError):
        mrm(model, MrmQuery(1))
    with pytest.raises(ConfigError):
        mrm(model, MrmQuery(3))
    with pytest.raises(TypeError):
        mrm(model, 2)
    with pytest.raises(TypeError):
        mrm(model.top, MrmQuery(2))


def test_mrm_binomial():
    """Test the range of mvstack.mrm.mrm for nonnegative binomial meta-models."""
    data, labels = view_data(60, [3, 3, 4], np.r_[np.full(3, 2.0), np.ones(3), np.zeros(4)],
                             family="binomial", seed=3)
    model = mvs_fit(data, ViewHierarchy(labels), cv=CV)
    result = mrm(model, MrmQuery(2))
    assert np.all((result.values >= 0) & (result.values <= 1))
    assert np.all(result.values[model.top.beta == 0] == 0)
    assert np.all(result.values[model.top.beta > 0] > 0)

    # a discarded view gets exactly zero
    top = replace(model.top, beta=np.array([model.top.beta[0], model.top.beta[1], 0.0]))
    meta = replace(model.levels[1], models=(top,))
    dropped = replace(model, levels=(model.levels[0], meta))
    assert mrm(dropped, MrmQuery(2)).values[2] == 0


def test_mrm_three_levels():
    """Test mvstack.mrm.mrm on the sub-views of a three-level model."""
    data, _ = view_data(60, [3, 3, 2, 4], np.r_[np.ones(6), np.zeros(6)], seed=4)
    assignment = np.column_stack([np.repeat([1, 2, 3, 4], [3, 3, 2, 4]),
                                  np.repeat([1, 2], [6, 6])])
    plan = LevelPlan.create(3, alphas=[0, 1, 1], nnc=[0, 1, 1])
    model = mvs_fit(data, ViewHierarchy(assignment), plan=plan, cv=CV)
    sub = mrm(model, MrmQuery(2))
    assert sub.values.shape == (4,)
    assert sub.names == ("V1", "V2", "V3", "V4")
    top = mrm(model, MrmQuery(3))
    assert top.values.shape == (2,)
    assert np.allclose(top.values, model.top.beta)

    # sub-views of a top view without coefficient have no effect
    beta = model.top.beta.copy()
    beta[1] = 0.0
    meta = replace(model.levels[2], models=(replace(model.top, beta=beta),))
    dropped = replace(model, levels=model.levels[:2] + (meta,))
    values = mrm(dropped, MrmQuery(2)).values
    assert np.all(values[2:] == 0)
