#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dialectid.cnn import *
from dialectid.corpus import DialectLabel
from dialectid.did import CnnIdentifier, cnnIdentify
from dialectid.featext import FeatureMatrix
from dialectid.utils import Events

def smallCnn(seed = 0):
	layers = [
		Conv1D(4, 3), Conv1D(4, 3), MaxPool1D(2), Dropout(0.25),
		Flatten(), Dense(8, 'relu'), Dense(2, 'softmax')
	]

	return CnnModel((20, 3), layers, seed = seed)

def separableDataset(rng, count = 16):
	dataset = []

	for i in range(count):
		label = DialectLabel.LT if i % 2 == 0 else DialectLabel.CT
		shift = -1.0 if label == DialectLabel.LT else 1.0
		dataset.append((FeatureMatrix(rng.normal(shift, 0.5, size = (20, 3))), label))

	return dataset

# architecture

def test_dialect_network_shapes():
	model = buildDialectCnn()

	assert model.input_shape == (INPUT_FRAMES, INPUT_CHANNELS) == (440, 39)
	assert model.shapes == [(440, 39), (440, 32), (440, 32), (220, 32), (220, 32), (220, 64), (220, 64), (110, 64), (110, 64), (7040,), (1024,), (2,)]
	assert model.layers[0].num_params == 12512
	assert model.is_classifier

def test_zero_weights_give_even_probabilities():
	model = smallCnn()

	for _, _, p in model.parameters():
		p[...] = 0.0

	assert_allclose(model.predict(np.ones((20, 3))), [0.5, 0.5])

def test_probabilities(rng):
	probs = smallCnn().predict(rng.normal(size = (5, 20, 3)))

	assert probs.shape == (5, 2)
	assert_allclose(probs.sum(axis = 1), 1.0)
	assert np.all(probs >= 0)

def test_same_padding(rng):
	layer = Conv1D(2, 4, 'linear')
	layer.build((7, 1), rng)
	x = rng.normal(size = (1, 7, 1))

	out = layer.forward(x)
	padded = np.pad(x[0, :, 0], (1, 2))
	expected = [padded[t:t+4] @ layer.params['K'][:, 0, :] + layer.params['b'] for t in range(7)]

	assert_allclose(out[0], expected, atol = 1e-12)

def test_identity_convolution(rng):
	layer = Conv1D(1, 1, 'linear')
	layer.build((6, 1), rng)
	layer.params['K'][...] = 1.0
	layer.params['b'][...] = 0.0

	x = rng.normal(size = (2, 6, 1))

	assert_allclose(layer.forward(x), x)

def test_pooling_drops_trailing_frames():
	layer = MaxPool1D(2)
	layer.build((5, 1), None)

	out = layer.forward(np.array([[[1.0], [3.0], [2.0], [0.0], [9.0]]]))

	assert_allclose(out[0, :, 0], [3.0, 2.0])

def test_layer_errors():
	with pytest.raises(LayerConfigError):
		Dropout(1.0)

	with pytest.raises(LayerConfigError):
		Dense(4, 'tanh')

	with pytest.raises(LayerConfigError):
		CnnModel((3, 2), [MaxPool1D(4)])

	with pytest.raises(LayerConfigError):
		layerFromConfig({'kind': 'lstm'})

def test_input_shape_mismatch():
	with pytest.raises(ShapeMismatchError):
		smallCnn().predict(np.zeros((21, 3)))

# gradients

@pytest.mark.parametrize('loss', ['cross-entropy', 'projection'])
def test_gradient_check(loss, rng):
	model = smallCnn(seed = 3)
	x = rng.normal(size = (2, 20, 3))

	error = gradientCheck(model, x, [DialectLabel.LT, DialectLabel.CT], epsilon = 1e-4, num_params = 800, loss = loss)

	assert error < 1e-4

def test_dialect_network_gradient_check(rng):
	model = buildDialectCnn(seed = 1)
	x = rng.normal(size = (INPUT_FRAMES, INPUT_CHANNELS))

	assert gradientCheck(model, x, DialectLabel.LT, num_params = 200) < 1e-4

def test_gradient_check_restores_parameters(rng):
	model = smallCnn()
	before = [p.copy() for _, _, p in model.parameters()]

	gradientCheck(model, rng.normal(size = (20, 3)), 0, num_params = 50)

	for p, q in zip(before, model.parameters()):
		assert np.array_equal(p, q[2])

# training

def test_training_reduces_loss(rng):
	epochs = []
	events = Events(TRAINING_EVENTS)
	events.addListener('cnn-epoch', lambda epoch, loss, accuracy: epochs.append(epoch))

	model, history = train(smallCnn(), separableDataset(rng), learning_rate = 0.05, batch_size = 4, epochs = 8, events = events)

	assert epochs == list(range(1, 9))
	assert len(history) == 8
	assert history[-1] < history[0]

def test_separable_classes_are_learned(rng):
	accuracies = []
	events = Events(TRAINING_EVENTS)
	events.addListener('cnn-epoch', lambda epoch, loss, accuracy: accuracies.append(accuracy))

	train(smallCnn(), separableDataset(rng, 100), learning_rate = 0.05, batch_size = 4, epochs = 30, seed = 1, events = events)

	assert max(accuracies) >= 0.99

def test_training_is_deterministic(rng):
	dataset = separableDataset(rng)

	a, _ = train(smallCnn(), dataset, learning_rate = 0.01, batch_size = 3, epochs = 2, seed = 5)
	b, _ = train(smallCnn(), dataset, learning_rate = 0.01, batch_size = 3, epochs = 2, seed = 5)

	for (_, _, p), (_, _, q) in zip(a.parameters(), b.parameters()):
		assert np.array_equal(p, q)

def test_zero_learning_rate_keeps_parameters(rng):
	model = smallCnn()
	before = [p.copy() for _, _, p in model.parameters()]

	train(model, separableDataset(rng, 4), learning_rate = 0, epochs = 1)

	for p, (_, _, q) in zip(before, model.parameters()):
		assert np.array_equal(p, q)

def test_dataset_errors(rng):
	with pytest.raises(DatasetError):
		train(smallCnn(), [])

	single = [(rng.normal(size = (20, 3)), DialectLabel.LT) for _ in range(3)]

	with pytest.raises(DatasetError):
		train(smallCnn(), single)

	with pytest.raises(ShapeMismatchError):
		stackDataset([(np.zeros((10, 3)), 0), (np.zeros((20, 3)), 1)], (20, 3))

	assert classIndex('CT') == 1
	assert classIndex(DialectLabel.LT) == 0

def test_divergence(rng):
	with np.errstate(all = 'ignore'):
		with pytest.raises(DivergenceError):
			train(smallCnn(), separableDataset(rng), learning_rate = 1e300, batch_size = 2, epochs = 3)

# files

def test_model_files(tmp_path, rng):
	model = smallCnn(seed = 7)
	filename = str(tmp_path / 'cnn.npz')
	model.save(filename)

	loaded = CnnModel.load(filename)
	x = rng.normal(size = (3, 20, 3))

	assert loaded.shapes == model.shapes
	assert [l.config() for l in loaded.layers] == [l.config() for l in model.layers]
	assert np.array_equal(loaded.predict(x), model.predict(x))

def test_copy_is_independent():
	model = smallCnn()
	clone = model.copy()

	clone.parameters()[0][2][...] = 0.0

	assert np.any(model.parameters()[0][2] != 0)

# identification

def test_cnn_identifier(rng):
	model = smallCnn()
	feat = FeatureMatrix(rng.normal(size = (12, 3)))

	decision = CnnIdentifier(model).identify(feat)

	assert decision.method == 'cnn'
	assert decision.scores[DialectLabel.LT] + decision.scores[DialectLabel.CT] == pytest.approx(1.0)
	assert decision.label == (DialectLabel.CT if decision.scores[DialectLabel.CT] > decision.scores[DialectLabel.LT] else DialectLabel.LT)
	assert cnnIdentify(model, feat) == decision
