#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import io
import json

import numpy as np

from .errors import *
from .layers import Conv1D, MaxPool1D, Dropout, Flatten, Dense, layerFromConfig
from ..utils import AtomicFile, jsonfiles

CNN_FORMAT = 'cnn'
CNN_VERSION = 1

INPUT_FRAMES = 440
INPUT_CHANNELS = 39

class CnnModel():
	'''
	A feed-forward network of 1D layers, working in double precision.
	Inputs are (T, C) matrices (time is the convolved axis, features are channels), or (N, T, C) batches.

	Parameters
	----------
	input_shape : tuple
		Shape of one input.

	layers : list
		The layers (`Layer` instances), in order. They are built (and their parameters initialized) here unless `build` is `False`.

	seed : int
		Seed of the parameter initialization.

	Raises
	------
	LayerConfigError
		The layer shapes do not chain.
	'''

	def __init__(self, input_shape, layers, *, seed = 0, build = True):
		self._input_shape = tuple(int(d) for d in input_shape)
		self._layers = list(layers)
		self._seed = seed

		rng = np.random.default_rng(seed)
		shape = self._input_shape
		self._shapes = [shape]

		for layer in self._layers:
			if build:
				shape = layer.build(shape, rng)

			else:
				layer.input_shape = shape
				shape = layer.output_shape = layer._outputShape(shape)

			self._shapes.append(shape)

	@property
	def input_shape(self):
		return self._input_shape

	@property
	def output_shape(self):
		return self._shapes[-1]

	@property
	def layers(self):
		return self._layers

	@property
	def shapes(self):
		'''
		Shape chain: input shape, then the output shape of each layer.
		'''

		return list(self._shapes)

	@property
	def seed(self):
		return self._seed

	@property
	def is_classifier(self):
		'''
		`True` if the last layer is a softmax.
		'''

		return bool(self._layers) and getattr(self._layers[-1], 'activation', None) == 'softmax'

	def parameters(self):
		'''
		All parameter tensors.

		Returns
		-------
		params : list
			(layer index, name, array) tuples. The arrays are the live tensors.
		'''

		return [(i, name, layer.params[name]) for i, layer in enumerate(self._layers) for name in sorted(layer.params)]

	@property
	def num_params(self):
		return sum(layer.num_params for layer in self._layers)

	def _batch(self, x):
		x = np.asarray(getattr(x, 'frames', x), dtype = np.float64)

		if x.shape == self._input_shape:
			return x[np.newaxis], True

		if x.shape[1:] != self._input_shape:
			raise ShapeMismatchError(self._input_shape, x.shape)

		return x, False

	def forward(self, x, train_mode = False, rng = None):
		'''
		Run the network.

		Parameters
		----------
		x : numpy.ndarray|FeatureMatrix
			One input or a batch.

		train_mode : bool
			`True` to activate dropout.

		rng : numpy.random.Generator
			Generator used by dropout in train mode.

		Raises
		------
		ShapeMismatchError
			The input does not have the expected shape.

		Returns
		-------
		output : numpy.ndarray
			Output of the last layer (unbatched if the input was).
		'''

		out, single = self._batch(x)

		if train_mode and rng is None:
			rng = np.random.default_rng(self._seed)

		for layer in self._layers:
			out = layer.forward(out, train = train_mode, rng = rng)

		return out[0] if single else out

	def predict(self, x):
		return self.forward(x, train_mode = False)

	def kinks(self):
		'''
		Discrete choices of the last forward pass, all layers together.
		'''

		return [k for layer in self._layers for k in layer.kinks()]

	def backward(self, grad, *, from_logits = False):
		'''
		Backpropagate a gradient of the outputs of the last forward pass; each layer keeps the gradients of its parameters.

		Parameters
		----------
		grad : numpy.ndarray
			Gradient with respect to the outputs (batched).

		from_logits : bool
			`True` if `grad` is already the gradient with respect to the pre-activations of the last layer.

		Returns
		-------
		grad : numpy.ndarray
			Gradient with respect to the inputs.
		'''

		for n, layer in enumerate(reversed(self._layers)):
			if n == 0 and from_logits:
				grad = layer.backward(grad, from_logits = True)

			else:
				grad = layer.backward(grad)

		return grad

	def gradients(self):
		'''
		Gradients of the last backward pass, aligned with `parameters()`.
		'''

		return [self._layers[i].grads[name] for i, name, _ in self.parameters()]

	def lossAndGradients(self, x, labels, *, train_mode = False, rng = None):
		'''
		Mean cross-entropy of a batch, and its gradients.

		Parameters
		----------
		x : numpy.ndarray
			Batch of inputs.

		labels : numpy.ndarray
			Class indices.

		Returns
		-------
		loss : float
			The mean cross-entropy.

		grads : list
			Gradients aligned with `parameters()`.
		'''

		if not(self.is_classifier):
			raise LayerConfigError('cross-entropy needs a softmax output layer')

		x, _ = self._batch(x)
		labels = np.asarray(labels, dtype = int)
		probs = self.forward(x, train_mode = train_mode, rng = rng)

		N = len(labels)
		picked = probs[np.arange(N), labels]
		loss = -float(np.mean(np.log(np.maximum(picked, np.finfo(float).tiny))))

		dlogits = probs.copy()
		dlogits[np.arange(N), labels] -= 1.0
		self.backward(dlogits / N, from_logits = True)

		return loss, self.gradients()

	def loss(self, x, labels):
		x, _ = self._batch(x)
		labels = np.asarray(labels, dtype = int)
		probs = self.forward(x)
		picked = probs[np.arange(len(labels)), labels]

		return -float(np.mean(np.log(np.maximum(picked, np.finfo(float).tiny))))

	def copy(self):
		'''
		Independent copy (same architecture, copied parameters).
		'''

		clone = CnnModel(self._input_shape, [layerFromConfig(layer.config()) for layer in self._layers], seed = self._seed, build = False)

		for layer, src in zip(clone.layers, self._layers):
			layer.params = {name: p.copy() for name, p in src.params.items()}

		return clone

	def header(self):
		return {
			'format': CNN_FORMAT,
			'version': CNN_VERSION,
			'input_shape': list(self._input_shape),
			'seed': self._seed,
			'layers': [layer.config() for layer in self._layers],
			'tensors': [{'layer': i, 'name': name, 'shape': list(p.shape)} for i, name, p in self.parameters()]
		}

	def save(self, filename):
		'''
		Save the network into a NumPy archive: one array per tensor, plus a JSON header describing the layers and the tensor shapes.

		Parameters
		----------
		filename : str
			Path to the `.npz` file.
		'''

		arrays = {f'layer{i}_{name}': p for i, name, p in self.parameters()}

		buffer = io.BytesIO()
		np.savez(buffer, header = np.array(json.dumps(self.header())), **arrays)

		with AtomicFile(filename, 'wb') as f:
			f.write(buffer.getvalue())

	@classmethod
	def load(cls, filename):
		'''
		Load a network saved with `save()`.

		Raises
		------
		ContainerFormatError
			The archive is not a network of the supported version.

		ShapeMismatchError
			A tensor does not have its declared shape.

		Returns
		-------
		model : CnnModel
			The network.
		'''

		with np.load(filename, allow_pickle = False) as archive:
			header = json.loads(str(archive['header']))
			jsonfiles.checkHeader(header, CNN_FORMAT, CNN_VERSION, filename)

			model = cls(header['input_shape'], [layerFromConfig(c) for c in header['layers']], seed = header['seed'], build = False)

			for tensor in header['tensors']:
				value = archive[f'layer{tensor["layer"]}_{tensor["name"]}']

				if list(value.shape) != tensor['shape']:
					raise ShapeMismatchError(tuple(tensor['shape']), value.shape)

				model.layers[tensor['layer']].params[tensor['name']] = value.astype(np.float64)

		return model

def buildDialectCnn(*, input_frames = INPUT_FRAMES, channels = INPUT_CHANNELS, seed = 0):
	'''
	The dialect network: two blocks of two same-padded convolutions (32 filters of width 10, then 64 of width 5), each followed by max pooling and dropout, then a dense rectifier layer and a two-way softmax (LT, CT).

	Parameters
	----------
	input_frames : int
		Number of frames of the inputs.

	channels : int
		Feature dimension.

	seed : int
		Seed of the initialization.

	Returns
	-------
	model : CnnModel
		The network.
	'''

	layers = [
		Conv1D(32, 10), Conv1D(32, 10), MaxPool1D(2), Dropout(0.25),
		Conv1D(64, 5), Conv1D(64, 5), MaxPool1D(2), Dropout(0.25),
		Flatten(), Dense(1024, 'relu'), Dense(2, 'softmax')
	]

	return CnnModel((input_frames, channels), layers, seed = seed)
