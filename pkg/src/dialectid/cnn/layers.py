#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import abc

import numpy as np

from .errors import *

ACTIVATIONS = ['relu', 'linear', 'softmax']

def softmax(z):
	z = z - z.max(axis = -1, keepdims = True)
	e = np.exp(z)
	return e / e.sum(axis = -1, keepdims = True)

class Layer(abc.ABC):
	'''
	A layer working on batches: inputs are (N, ...) arrays.
	Layers with parameters expose them in `params` and the gradients of the last backward pass in `grads`.
	'''

	def __init__(self):
		self.params = {}
		self.grads = {}
		self.input_shape = None
		self.output_shape = None

	@property
	@abc.abstractmethod
	def kind(self):
		pass

	def config(self):
		'''
		Hyperparameters, enough to rebuild the layer.
		'''

		return {'kind': self.kind}

	def build(self, input_shape, rng):
		'''
		Initialize the layer for a given input shape (without the batch axis).

		Returns
		-------
		output_shape : tuple
			Shape of the outputs.
		'''

		self.input_shape = tuple(input_shape)
		self.output_shape = self._outputShape(self.input_shape)
		self._initParams(rng)

		return self.output_shape

	def _initParams(self, rng):
		pass

	@abc.abstractmethod
	def _outputShape(self, input_shape):
		pass

	@abc.abstractmethod
	def forward(self, x, train = False, rng = None):
		pass

	@abc.abstractmethod
	def backward(self, grad):
		pass

	def kinks(self):
		'''
		Discrete choices of the last forward pass (ReLU masks, pooling winners). The outputs are not differentiable where they change.
		'''

		return []

	@property
	def num_params(self):
		return sum(p.size for p in self.params.values())

class _Activated(Layer):
	def __init__(self, activation):
		super().__init__()

		if not(activation in ACTIVATIONS):
			raise LayerConfigError(f'unknown activation `{activation}`')

		self.activation = activation

	def _activate(self, z):
		self._z = z

		if self.activation == 'relu':
			self._out = np.maximum(z, 0.0)

		elif self.activation == 'softmax':
			self._out = softmax(z)

		else:
			self._out = z

		return self._out

	def _activationGrad(self, grad, from_logits = False):
		'''
		Gradient with respect to the pre-activations.
		'''

		if from_logits or self.activation == 'linear':
			return grad

		if self.activation == 'relu':
			return grad * (self._z > 0)

		p = self._out
		return p * (grad - np.sum(grad * p, axis = -1, keepdims = True))

	def kinks(self):
		return [self._z > 0] if self.activation == 'relu' else []

class Conv1D(_Activated):
	'''
	1D convolution along time with zero "same" padding: (N, T, C) → (N, T, filters).
	The kernel K has shape (kernel, C, filters).
	'''

	kind = 'conv1d'

	def __init__(self, filters, kernel, activation = 'relu'):
		super().__init__(activation)

		if filters < 1 or kernel < 1:
			raise LayerConfigError('filters and kernel size must be positive')

		self.filters = int(filters)
		self.kernel = int(kernel)
		self.pad_left = (self.kernel - 1) // 2
		self.pad_right = self.kernel - 1 - self.pad_left

	def config(self):
		return {'kind': self.kind, 'filters': self.filters, 'kernel': self.kernel, 'activation': self.activation}

	def _outputShape(self, input_shape):
		if len(input_shape) != 2:
			raise LayerConfigError(f'conv1d needs (T, C) inputs, got {input_shape}')

		return (input_shape[0], self.filters)

	def _initParams(self, rng):
		channels = self.input_shape[1]
		fan_in = self.kernel * channels

		self.params = {
			'K': rng.normal(0.0, np.sqrt(2.0 / fan_in), size = (self.kernel, channels, self.filters)),
			'b': np.zeros(self.filters)
		}

	def forward(self, x, train = False, rng = None):
		N, T, C = x.shape
		padded = np.pad(x, ((0, 0), (self.pad_left, self.pad_right), (0, 0)))

		# (N, T, C, k) → (N T, k C)
		windows = np.lib.stride_tricks.sliding_window_view(padded, self.kernel, axis = 1)
		self._cols = windows.transpose(0, 1, 3, 2).reshape(N * T, self.kernel * C)
		self._shape = (N, T, C)

		z = self._cols @ self.params['K'].reshape(self.kernel * C, self.filters) + self.params['b']

		return self._activate(z.reshape(N, T, self.filters))

	def backward(self, grad, from_logits = False):
		N, T, C = self._shape
		dz = self._activationGrad(grad, from_logits).reshape(N * T, self.filters)

		self.grads = {
			'K': (self._cols.T @ dz).reshape(self.kernel, C, self.filters),
			'b': dz.sum(axis = 0)
		}

		dcols = (dz @ self.params['K'].reshape(self.kernel * C, self.filters).T).reshape(N, T, self.kernel, C)
		dpadded = np.zeros((N, T + self.kernel - 1, C))

		for j in range(self.kernel):
			dpadded[:, j:j+T] += dcols[:, :, j]

		return dpadded[:, self.pad_left:self.pad_left+T]

class MaxPool1D(Layer):
	'''
	Max pooling along time, non-overlapping windows; trailing frames not filling a window are dropped.
	'''

	kind = 'maxpool1d'

	def __init__(self, size = 2):
		super().__init__()

		if size < 1:
			raise LayerConfigError('pool size must be positive')

		self.size = int(size)

	def config(self):
		return {'kind': self.kind, 'size': self.size}

	def _outputShape(self, input_shape):
		if input_shape[0] < self.size:
			raise LayerConfigError(f'cannot pool {input_shape[0]} frames by {self.size}')

		return (input_shape[0] // self.size, *input_shape[1:])

	def forward(self, x, train = False, rng = None):
		N, T, C = x.shape
		T_out = T // self.size

		windows = x[:, :T_out*self.size].reshape(N, T_out, self.size, C)
		self._argmax = windows.argmax(axis = 2)
		self._shape = x.shape

		return np.take_along_axis(windows, self._argmax[:, :, np.newaxis], axis = 2)[:, :, 0]

	def backward(self, grad):
		N, T, C = self._shape
		T_out = grad.shape[1]

		dwindows = np.zeros((N, T_out, self.size, C))
		np.put_along_axis(dwindows, self._argmax[:, :, np.newaxis], grad[:, :, np.newaxis], axis = 2)

		dx = np.zeros(self._shape)
		dx[:, :T_out*self.size] = dwindows.reshape(N, T_out * self.size, C)

		return dx

	def kinks(self):
		return [self._argmax]

class Dropout(Layer):
	'''
	Inverted dropout: in training, units are zeroed with probability `rate` and the others scaled by 1 / (1 - rate); the identity otherwise.
	'''

	kind = 'dropout'

	def __init__(self, rate):
		super().__init__()

		if not(0 <= rate < 1):
			raise LayerConfigError(f'dropout rate must be in [0, 1[, got {rate}')

		self.rate = float(rate)

	def config(self):
		return {'kind': self.kind, 'rate': self.rate}

	def _outputShape(self, input_shape):
		return input_shape

	def forward(self, x, train = False, rng = None):
		if not(train) or self.rate == 0:
			self._mask = None
			return x

		self._mask = (rng.random(x.shape) >= self.rate) / (1.0 - self.rate)
		return x * self._mask

	def backward(self, grad):
		return grad if self._mask is None else grad * self._mask

class Flatten(Layer):
	kind = 'flatten'

	def _outputShape(self, input_shape):
		return (int(np.prod(input_shape)),)

	def forward(self, x, train = False, rng = None):
		self._shape = x.shape
		return x.reshape(x.shape[0], -1)

	def backward(self, grad):
		return grad.reshape(self._shape)

class Dense(_Activated):
	'''
	Fully connected layer: (N, D) → (N, units).
	'''

	kind = 'dense'

	def __init__(self, units, activation = 'relu'):
		super().__init__(activation)

		if units < 1:
			raise LayerConfigError('units must be positive')

		self.units = int(units)

	def config(self):
		return {'kind': self.kind, 'units': self.units, 'activation': self.activation}

	def _outputShape(self, input_shape):
		if len(input_shape) != 1:
			raise LayerConfigError(f'dense needs flat inputs, got {input_shape}')

		return (self.units,)

	def _initParams(self, rng):
		fan_in = self.input_shape[0]

		self.params = {
			'W': rng.normal(0.0, np.sqrt(2.0 / fan_in), size = (fan_in, self.units)),
			'b': np.zeros(self.units)
		}

	def forward(self, x, train = False, rng = None):
		self._x = x
		return self._activate(x @ self.params['W'] + self.params['b'])

	def backward(self, grad, from_logits = False):
		dz = self._activationGrad(grad, from_logits)

		self.grads = {
			'W': self._x.T @ dz,
			'b': dz.sum(axis = 0)
		}

		return dz @ self.params['W'].T

LAYER_TYPES = {cls.kind: cls for cls in [Conv1D, MaxPool1D, Dropout, Flatten, Dense]}

def layerFromConfig(config):
	'''
	Build a layer from its `config()`.
	'''

	config = dict(config)

	try:
		cls = LAYER_TYPES[config.pop('kind')]

	except KeyError:
		raise LayerConfigError(f'unknown layer in {config}')

	return cls(**config)
