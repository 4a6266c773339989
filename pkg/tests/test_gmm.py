#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dialectid.corpus import DialectLabel
from dialectid.featext import FeatureMatrix
from dialectid.gmm import *
from dialectid.utils import Events

def randomModel(rng, M, D):
	weights = rng.uniform(0.5, 1.5, size = M)
	return GmmModel(weights / weights.sum(), rng.normal(size = (M, D)), rng.uniform(0.5, 2.0, size = (M, D)))

def linearDensity(model, x):
	total = 0.0

	for w, mu, var in zip(model.weights, model.means, model.variances):
		total += w * np.prod(np.exp(-0.5 * (x - mu) ** 2 / var) / np.sqrt(2 * np.pi * var))

	return total

def emTrace(init, frames, iters):
	events = Events(EM_EVENTS)
	trace = []
	events.addListener('em-iteration', lambda iteration, loglik: trace.append(loglik))

	model = emFit(init, frames, iters, tol = -np.inf, events = events)
	return model, trace

# densities

def test_standard_normal_density():
	model = GmmModel([1.0], [[0.0, 0.0]], [[1.0, 1.0]])

	assert model.logDensity([0.0, 0.0]) == pytest.approx(-np.log(2 * np.pi), abs = 1e-12)
	assert logDensity(model, np.zeros(2)) == pytest.approx(-1.837877, abs = 1e-6)

def test_density_matches_linear_domain(rng):
	for _ in range(10):
		model = randomModel(rng, 2, 3)
		x = rng.normal(size = 3)

		assert model.logDensity(x) == pytest.approx(np.log(linearDensity(model, x)), abs = 1e-10)

def test_density_far_from_means():
	model = GmmModel([0.5, 0.5], [[0.0], [1.0]], [[1.0], [1.0]])
	value = model.logDensity([100.0])

	assert np.isfinite(value)
	assert value == pytest.approx(-0.5 * np.log(2 * np.pi) - 0.5 * 99 ** 2 + np.log(0.5 * (1 + np.exp(-0.5 * (100 ** 2 - 99 ** 2)))), rel = 1e-12)

def test_dimension_mismatch():
	model = GmmModel([1.0], [[0.0, 0.0]], [[1.0, 1.0]])

	with pytest.raises(GmmDimensionError):
		model.logDensity([0.0, 0.0, 0.0])

	with pytest.raises(GmmDimensionError):
		model.utteranceLoglik(np.zeros((4, 3)))

def test_utterance_loglik(rng):
	model = randomModel(rng, 3, 4)
	frames = rng.normal(size = (50, 4))

	assert utteranceLoglik(model, FeatureMatrix(frames)) == pytest.approx(sum(model.logDensity(x) for x in frames), abs = 1e-9)
	assert model.utteranceLoglik(frames[:1]) == pytest.approx(model.logDensity(frames[0]))
	assert model.utteranceLoglik(frames) == pytest.approx(model.utteranceLoglik(frames[:20]) + model.utteranceLoglik(frames[20:]), abs = 1e-9)

	with pytest.raises(ValueError):
		model.utteranceLoglik(np.zeros((0, 4)))

def test_model_invariants():
	with pytest.raises(GmmInvariantError):
		GmmModel([0.5, 0.6], [[0.0], [1.0]], [[1.0], [1.0]])

	with pytest.raises(GmmInvariantError):
		GmmModel([1.0], [[0.0]], [[0.0]])

	with pytest.raises(GmmInvariantError):
		GmmModel([1.0], [[0.0, 1.0]], [[1.0]])

def test_model_files(tmp_path, rng):
	model = randomModel(rng, 4, 3).withLabel('LT')
	filename = str(tmp_path / 'gmm.json')
	model.save(filename)

	assert GmmModel.load(filename) == model

	obj = model.toDict()
	obj['num_components'] = 5

	with pytest.raises(GmmInvariantError):
		GmmModel.fromDict(obj)

# EM

def test_em_single_gaussian(rng):
	frames = rng.normal(3.0, 2.0, size = (200, 2))
	init = GmmModel([1.0], [[10.0, -10.0]], [[5.0, 5.0]])

	model = emFit(init, frames, max_iters = 1)

	assert_allclose(model.means[0], frames.mean(axis = 0), atol = 1e-12)
	assert_allclose(model.variances[0], np.maximum(frames.var(axis = 0), varianceFloor(frames)), atol = 1e-12)

def test_em_recovers_clusters(rng):
	frames = np.vstack([rng.normal(-3.0, 0.5, size = (2000, 2)), rng.normal(3.0, 0.5, size = (2000, 2))])

	model = trainGmm(frames, 2)
	means = model.means[np.argsort(model.means[:, 0])]

	assert_allclose(means, [[-3.0, -3.0], [3.0, 3.0]], atol = 0.05)
	assert_allclose(model.weights, [0.5, 0.5], atol = 0.01)

@pytest.mark.parametrize('seed', range(20))
def test_em_monotone(seed):
	rng = np.random.default_rng(seed)
	M = int(rng.integers(1, 5))
	frames = np.vstack([rng.normal(rng.normal(scale = 3, size = 3), 1.0, size = (60, 3)) for _ in range(3)])

	_, trace = emTrace(randomModel(rng, M, 3), frames, 20)

	assert len(trace) == 20
	assert np.all(np.diff(trace) >= -1e-8)

def test_em_errors():
	with pytest.raises(NotEnoughFramesError):
		emFit(GmmModel([0.5, 0.5], [[0.0], [1.0]], [[1.0], [1.0]]), np.zeros((1, 1)))

	with pytest.raises(NotEnoughFramesError):
		trainGmm(np.zeros((3, 2)), 4)

def test_weights_and_floor_after_training(rng):
	frames = np.vstack([rng.normal(size = (100, 3)), np.zeros((50, 3))])
	floor = varianceFloor(frames)

	model = trainGmm(frames, 4, em_iters = 10)

	assert model.weights.sum() == pytest.approx(1.0, abs = 1e-10)
	assert np.all(model.variances >= floor - 1e-15)

# splitting

def test_split_single():
	model = splitMixtures(GmmModel([1.0], [[0.0]], [[4.0]]))

	assert model.num_components == 2
	assert_allclose(model.weights, [0.5, 0.5])
	assert_allclose(sorted(model.means[:, 0]), [-0.4, 0.4])

def test_split_density_close(rng):
	model = randomModel(rng, 1, 2)
	split = splitMixtures(model, epsilon = 0.2)

	for _ in range(50):
		x = model.means[0] + rng.uniform(-1, 1, size = 2) * np.sqrt(model.variances[0])
		ratio = np.exp(split.logDensity(x) - model.logDensity(x))

		assert abs(ratio - 1) < 0.05

def test_partial_split():
	model = GmmModel([0.1, 0.4, 0.2, 0.3], [[0.0], [1.0], [2.0], [3.0]], np.ones((4, 1)))
	grown = growMixture(model, 6)

	assert grown.num_components == 6
	assert grown.weights.sum() == pytest.approx(1.0)
	assert sorted(grown.weights.tolist()) == pytest.approx([0.1, 0.15, 0.15, 0.2, 0.2, 0.2])

def test_binary_splitting_reaches_size(rng):
	frames = rng.normal(size = (600, 2))
	sizes = []

	events = Events(EM_EVENTS)
	events.addListener('em-stage', sizes.append)

	model = trainGmm(frames, 12, em_iters = 2, events = events)

	assert model.num_components == 12
	assert sizes == [1, 2, 4, 8, 12]

# classification

def test_tie_goes_to_lt(rng):
	model = randomModel(rng, 2, 3)
	label, scores = classifyGmm({DialectLabel.LT: model, DialectLabel.CT: model}, rng.normal(size = (10, 3)))

	assert label == DialectLabel.LT
	assert scores[DialectLabel.LT] == scores[DialectLabel.CT]

def test_classify_by_likelihood(rng):
	lt = GmmModel([1.0], [[-2.0, 0.0]], [[1.0, 1.0]])
	ct = GmmModel([1.0], [[2.0, 0.0]], [[1.0, 1.0]])
	classifier = GmmClassifier({'LT': lt, 'CT': ct})

	assert classifier.classify(rng.normal([2.0, 0.0], 1.0, size = (30, 2)))[0] == DialectLabel.CT
	assert classifier.classify(rng.normal([-2.0, 0.0], 1.0, size = (30, 2)))[0] == DialectLabel.LT

	with pytest.raises(MissingDialectModelError):
		GmmClassifier({'LT': lt})

def test_classifier_files(tmp_path, rng):
	frames = {DialectLabel.LT: rng.normal(-1.0, 1.0, size = (100, 2)), DialectLabel.CT: rng.normal(1.0, 1.0, size = (100, 2))}
	classifier = GmmClassifier.train(frames, 2, em_iters = 3)

	filename = str(tmp_path / 'gmm.json')
	classifier.save(filename)

	assert GmmClassifier.load(filename).models == classifier.models
