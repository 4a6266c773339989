#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import scipy.special

from .errors import *
from ..utils import jsonfiles

GMM_FORMAT = 'gmm'
GMM_VERSION = 1

# frames per block when evaluating densities
BLOCK_SIZE = 256

def asFrames(feat):
	'''
	Frames of a FeatureMatrix or of any array, as a 2D float array.
	'''

	frames = getattr(feat, 'frames', feat)
	return np.atleast_2d(np.asarray(frames, dtype = np.float64))

class GmmModel():
	'''
	Gaussian mixture with diagonal covariances.

	Parameters
	----------
	weights : array_like
		Mixture weights (M values summing to 1).

	means : array_like
		M × D means.

	variances : array_like
		M × D diagonal variances, all positive.

	label : str
		What the model stands for (dialect, HMM state...).

	Raises
	------
	GmmInvariantError
		Inconsistent shapes, weights not summing to 1 within 1e-10 or non-positive variances.
	'''

	def __init__(self, weights, means, variances, *, label = None):
		weights = np.array(weights, dtype = np.float64).reshape(-1)
		means = np.array(means, dtype = np.float64, ndmin = 2)
		variances = np.array(variances, dtype = np.float64, ndmin = 2)

		if means.shape != variances.shape or means.shape[0] != weights.shape[0] or means.shape[0] < 1:
			raise GmmInvariantError(f'inconsistent shapes: weights {weights.shape}, means {means.shape}, variances {variances.shape}')

		if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-10:
			raise GmmInvariantError(f'weights must be non-negative and sum to 1, got sum {weights.sum()}')

		if not(np.all(np.isfinite(means))) or not(np.all(np.isfinite(variances))) or np.any(variances <= 0):
			raise GmmInvariantError('means must be finite and variances finite and positive')

		for a in [weights, means, variances]:
			a.flags.writeable = False

		self._weights = weights
		self._means = means
		self._variances = variances
		self._label = label

		with np.errstate(divide = 'ignore'):
			self._log_weights = np.log(weights)

		self._log_norm = -0.5 * (means.shape[1] * np.log(2 * np.pi) + np.sum(np.log(variances), axis = 1))
		self._precisions = 1.0 / variances

	@classmethod
	def single(cls, frames, *, floor = None, label = None):
		'''
		One Gaussian with the mean and (floored) variance of some frames.
		'''

		frames = asFrames(frames)
		variances = frames.var(axis = 0)

		if floor is not None:
			variances = np.maximum(variances, floor)

		return cls([1.0], frames.mean(axis = 0, keepdims = True), variances[np.newaxis], label = label)

	def __eq__(self, other):
		return isinstance(other, GmmModel) and self._label == other._label and np.array_equal(self._weights, other._weights) and np.array_equal(self._means, other._means) and np.array_equal(self._variances, other._variances)

	@property
	def num_components(self):
		return self._weights.shape[0]

	@property
	def dim(self):
		return self._means.shape[1]

	@property
	def weights(self):
		return self._weights

	@property
	def means(self):
		return self._means

	@property
	def variances(self):
		return self._variances

	@property
	def label(self):
		return self._label

	def withLabel(self, label):
		return GmmModel(self._weights, self._means, self._variances, label = label)

	def _checkDim(self, frames):
		if frames.shape[1] != self.dim:
			raise GmmDimensionError(self.dim, frames.shape[1])

	def logComponentDensities(self, frames):
		'''
		log(w_i) + log g(x_t; μ_i, Σ_i) for every frame and component.

		Parameters
		----------
		frames : array_like
			T × D frames.

		Raises
		------
		GmmDimensionError
			Wrong frame dimension.

		Returns
		-------
		log_densities : ndarray
			T × M matrix.
		'''

		frames = asFrames(frames)
		self._checkDim(frames)

		out = np.empty((frames.shape[0], self.num_components))

		for start in range(0, frames.shape[0], BLOCK_SIZE):
			block = frames[start:start+BLOCK_SIZE]
			diff = block[:, np.newaxis, :] - self._means[np.newaxis]
			out[start:start+BLOCK_SIZE] = self._log_weights + self._log_norm - 0.5 * np.einsum('tmd,md->tm', diff * diff, self._precisions)

		return out

	def logDensities(self, frames):
		'''
		Log-density of each frame.

		Returns
		-------
		log_densities : ndarray
			T values.
		'''

		return scipy.special.logsumexp(self.logComponentDensities(frames), axis = 1)

	def logDensity(self, frame):
		'''
		log Σ_i w_i g(x; μ_i, Σ_i), computed in the log domain.

		Parameters
		----------
		frame : array_like
			A D-vector.

		Raises
		------
		GmmDimensionError
			Wrong frame dimension.

		Returns
		-------
		log_density : float
			The log-density.
		'''

		frame = np.asarray(frame, dtype = np.float64)

		if frame.ndim != 1:
			raise GmmDimensionError(self.dim, frame.shape)

		return float(self.logDensities(frame[np.newaxis])[0])

	def utteranceLoglik(self, feat):
		'''
		Sum of the frame log-densities of an utterance.

		Parameters
		----------
		feat : FeatureMatrix|ndarray
			The frames.

		Raises
		------
		GmmDimensionError
			Wrong frame dimension.

		ValueError
			No frame.

		Returns
		-------
		loglik : float
			The log-likelihood.
		'''

		frames = np.asarray(getattr(feat, 'frames', feat), dtype = np.float64)

		if frames.ndim != 2 or frames.shape[0] == 0:
			raise ValueError('utterance log-likelihood of an empty feature matrix')

		return float(np.sum(self.logDensities(frames)))

	def toDict(self):
		return {
			'label': self._label,
			'num_components': self.num_components,
			'dim': self.dim,
			'weights': self._weights.tolist(),
			'means': self._means.tolist(),
			'variances': self._variances.tolist()
		}

	@classmethod
	def fromDict(cls, obj):
		'''
		Rebuild a model from `toDict()`, checking the declared sizes.

		Raises
		------
		GmmInvariantError
			Declared sizes do not match the arrays, or any model invariant is broken.
		'''

		model = cls(obj['weights'], obj['means'], obj['variances'], label = obj.get('label'))

		if model.num_components != obj['num_components'] or model.dim != obj['dim']:
			raise GmmInvariantError(f'declared size {obj["num_components"]}×{obj["dim"]} does not match the arrays {model.num_components}×{model.dim}')

		return model

	def save(self, filename):
		jsonfiles.writeContainer(GMM_FORMAT, GMM_VERSION, self.toDict(), filename)

	@classmethod
	def load(cls, filename):
		return cls.fromDict(jsonfiles.readContainer(GMM_FORMAT, GMM_VERSION, filename))

def logDensity(model, frame):
	return model.logDensity(frame)

def utteranceLoglik(model, feat):
	return model.utteranceLoglik(feat)
