#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
import math

import numpy as np

from .errors import *
from ..corpus.inventory import DialectLabel
from ..utils.events import maybeTrigger

logger = logging.getLogger(__name__)

TRAINING_EVENTS = ['cnn-epoch', 'cnn-batch']

CLASSES = [DialectLabel.LT, DialectLabel.CT]

DEFAULT_LEARNING_RATE = 1e-3
DEFAULT_BATCH_SIZE = 16
DEFAULT_EPOCHS = 10

CROSS_ENTROPY = 'cross-entropy'
PROJECTION = 'projection'

def classIndex(label):
	'''
	Output index of a dialect (0 for LT, 1 for CT). Integers are accepted as they are.
	'''

	if isinstance(label, (int, np.integer)) and not(isinstance(label, bool)):
		return int(label)

	return CLASSES.index(DialectLabel(label))

def stackDataset(dataset, input_shape):
	'''
	Stack (features, label) pairs into arrays.

	Parameters
	----------
	dataset : list
		(FeatureMatrix|ndarray, DialectLabel|int) pairs, features of the network input shape.

	input_shape : tuple
		Expected shape of each input.

	Raises
	------
	DatasetError
		The dataset is empty or holds a single class.

	ShapeMismatchError
		An input has the wrong shape.

	Returns
	-------
	x : numpy.ndarray
		N × T × C inputs.

	y : numpy.ndarray
		N class indices.
	'''

	if not(dataset):
		raise DatasetError('empty training set')

	inputs = []
	labels = []

	for feat, label in dataset:
		x = np.asarray(getattr(feat, 'frames', feat), dtype = np.float64)

		if x.shape != tuple(input_shape):
			raise ShapeMismatchError(tuple(input_shape), x.shape)

		inputs.append(x)
		labels.append(classIndex(label))

	y = np.array(labels, dtype = int)

	if len(np.unique(y)) < 2:
		raise DatasetError('both classes must be present in the training set')

	return np.stack(inputs), y

def train(model, dataset, *, learning_rate = DEFAULT_LEARNING_RATE, batch_size = DEFAULT_BATCH_SIZE, epochs = DEFAULT_EPOCHS, seed = 0, events = None):
	'''
	Minimize the cross-entropy by mini-batch gradient descent, with a fixed learning rate.
	The sample order and the dropout masks only depend on `seed`, so two runs from the same model give the same parameters.

	Parameters
	----------
	model : CnnModel
		The network, updated in place. Its last layer must be a softmax.

	dataset : list
		(features, label) pairs.

	learning_rate : float
		Step size.

	batch_size : int
		Samples per update.

	epochs : int
		Passes over the dataset.

	seed : int
		Seed of the shuffling and of dropout.

	events : Events
		Receives `cnn-batch` (epoch, batch, loss) and `cnn-epoch` (epoch, loss, accuracy) where the loss is the mean over the batches of the epoch.

	Raises
	------
	DatasetError
		The dataset is empty or lacks a class.

	DivergenceError
		The loss is not finite.

	Returns
	-------
	model : CnnModel
		The trained network (the same object).

	history : list
		Mean training loss of each epoch.
	'''

	if batch_size < 1:
		raise ValueError(f'batch size must be positive, got {batch_size}')

	x, y = stackDataset(dataset, model.input_shape)
	rng = np.random.default_rng(seed)
	params = [p for _, _, p in model.parameters()]
	history = []

	for epoch in range(1, epochs + 1):
		order = rng.permutation(len(y))
		losses = []
		correct = 0

		for b, start in enumerate(range(0, len(y), batch_size)):
			batch = order[start:start+batch_size]
			loss, grads = model.lossAndGradients(x[batch], y[batch], train_mode = True, rng = rng)

			if not(math.isfinite(loss)):
				raise DivergenceError(epoch, loss)

			if learning_rate != 0:
				for p, g in zip(params, grads):
					p -= learning_rate * g

			losses.append(loss * len(batch))
			maybeTrigger(events, 'cnn-batch', epoch, b, loss)

		mean_loss = sum(losses) / len(y)
		correct = int(np.sum(np.argmax(model.predict(x), axis = 1) == y))
		accuracy = correct / len(y)
		history.append(mean_loss)

		logger.debug(f'epoch {epoch}: loss {mean_loss:.6f}, training accuracy {accuracy:.4f}')
		maybeTrigger(events, 'cnn-epoch', epoch, mean_loss, accuracy)

	return model, history

def _objective(model, x, target, loss):
	out = model.forward(x)

	if loss == CROSS_ENTROPY:
		N = len(target)
		return -float(np.mean(np.log(np.maximum(out[np.arange(N), target], np.finfo(float).tiny))))

	return float(np.sum(out * target))

def _sameKinks(a, b):
	return len(a) == len(b) and all(np.array_equal(u, v) for u, v in zip(a, b))

def gradientCheck(model, x, label, *, epsilon = 1e-4, num_params = 200, seed = 0, loss = CROSS_ENTROPY, floor = 1e-7, max_redraws = 20):
	'''
	Compare backpropagated gradients with central finite differences on a random subset of parameters.
	Each parameter tensor receives the same share of the sample. A parameter whose ±ε perturbation changes a ReLU mask or a max-pooling winner sits on a kink, where the network is not differentiable: it is replaced by another one of the same tensor.

	Parameters
	----------
	model : CnnModel
		The network. Dropout is off during the check.

	x : numpy.ndarray|FeatureMatrix
		One input (or a batch).

	label : DialectLabel|int|list
		Label(s) of the input(s), used by the cross-entropy.

	epsilon : float
		Finite difference step.

	num_params : int
		Number of parameters to check overall.

	seed : int
		Seed of the parameter draw and of the projection.

	loss : str
		`cross-entropy`, or `projection`: the sum of the outputs weighted by fixed random values (any network).

	floor : float
		Lower bound of the denominator of the relative error.

	max_redraws : int
		Attempts to find a parameter away from any kink, per sampled parameter.

	Returns
	-------
	error : float
		Largest relative error |a - n| / max(|a|, |n|, floor).
	'''

	rng = np.random.default_rng(seed)
	x, _ = model._batch(x)

	if loss == CROSS_ENTROPY:
		labels = label if isinstance(label, (list, tuple, np.ndarray)) else [label]
		target = np.array([classIndex(l) for l in labels], dtype = int)
		model.lossAndGradients(x, target)

	elif loss == PROJECTION:
		target = rng.normal(size = (len(x), *model.output_shape))
		model.forward(x)
		model.backward(target)

	else:
		raise ValueError(f'unknown loss `{loss}`')

	base_kinks = [k.copy() for k in model.kinks()]
	analytic = [g.copy() for g in model.gradients()]
	tensors = model.parameters()

	share = math.ceil(num_params / len(tensors))
	max_error = 0.0
	checked = 0
	skipped = 0

	for (i, name, p), grad in zip(tensors, analytic):
		flat = p.reshape(-1)
		wanted = min(share, flat.size)
		redraws = 0
		done = 0

		for idx in rng.permutation(flat.size):
			if done == wanted or redraws > max_redraws * wanted:
				break

			original = flat[idx]

			flat[idx] = original + epsilon
			plus = _objective(model, x, target, loss)
			plus_kinks = model.kinks()

			flat[idx] = original - epsilon
			minus = _objective(model, x, target, loss)
			minus_kinks = model.kinks()

			flat[idx] = original

			if not(_sameKinks(base_kinks, plus_kinks) and _sameKinks(base_kinks, minus_kinks)):
				redraws += 1
				continue

			a = grad.reshape(-1)[idx]
			n = (plus - minus) / (2 * epsilon)

			max_error = max(max_error, abs(a - n) / max(abs(a), abs(n), floor))
			done += 1

		checked += done
		skipped += redraws

	logger.debug(f'gradient check: {checked} parameters checked, {skipped} redrawn, max relative error {max_error:.3e}')

	return max_error
