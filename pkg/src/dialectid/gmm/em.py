#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging

import numpy as np
import scipy.special

from .errors import *
from .model import GmmModel, asFrames
from ..utils.events import maybeTrigger

logger = logging.getLogger(__name__)

EM_EVENTS = ['em-iteration', 'em-stage']

DEFAULT_FLOOR_FACTOR = 1e-3
DEFAULT_EPSILON = 0.2

def varianceFloor(frames, factor = DEFAULT_FLOOR_FACTOR):
	'''
	Variance floor: a fraction of the global variance of each dimension.

	Parameters
	----------
	frames : array_like
		The pooled frames.

	factor : float
		Fraction of the global variance.

	Returns
	-------
	floor : ndarray
		One positive value per dimension.
	'''

	frames = asFrames(frames)
	return np.maximum(factor * frames.var(axis = 0), np.finfo(np.float64).tiny)

def emStep(model, frames, floor):
	'''
	One EM iteration.
	Components receiving no responsibility keep their parameters (with a zero weight). Flooring the variances is the constrained maximization of the M-step, so the likelihood never decreases.

	Parameters
	----------
	model : GmmModel
		Current model.

	frames : ndarray
		T × D frames.

	floor : ndarray|float
		Variance floor.

	Returns
	-------
	model : GmmModel
		Updated model.

	loglik : float
		Total log-likelihood of the frames under the current (not updated) model.
	'''

	log_components = model.logComponentDensities(frames)
	log_totals = scipy.special.logsumexp(log_components, axis = 1)
	gamma = np.exp(log_components - log_totals[:, np.newaxis])

	counts = gamma.sum(axis = 0)
	used = counts > 0

	means = np.array(model.means)
	variances = np.array(model.variances)

	first = gamma.T @ frames
	means[used] = first[used] / counts[used, np.newaxis]

	for i in np.flatnonzero(used):
		diff = frames - means[i]
		variances[i] = gamma[:, i] @ (diff * diff) / counts[i]

	variances[used] = np.maximum(variances[used], floor)

	weights = counts / counts.sum()

	return GmmModel(weights, means, variances, label = model.label), float(np.sum(log_totals))

def emFit(init, frames, max_iters = 20, tol = 1e-4, floor = None, *, events = None):
	'''
	Fit a mixture by EM, starting from a given model.
	Stops after `max_iters` iterations or when the mean log-likelihood per frame improves by less than `tol`.

	Parameters
	----------
	init : GmmModel
		Initial model.

	frames : array_like
		Pooled T × D frames.

	max_iters : int
		Maximal number of iterations.

	tol : float
		Convergence threshold on the per-frame log-likelihood improvement.

	floor : ndarray|float
		Variance floor, `varianceFloor(frames)` by default.

	events : Events
		Receives `em-iteration` (iteration, loglik) after each iteration, loglik being the total log-likelihood of the model going into the iteration.

	Raises
	------
	NotEnoughFramesError
		Fewer frames than components.

	NonFiniteLikelihoodError
		The likelihood became non-finite.

	Returns
	-------
	model : GmmModel
		The fitted model.
	'''

	frames = asFrames(frames)
	T = frames.shape[0]

	if T < init.num_components:
		raise NotEnoughFramesError(T, init.num_components)

	if floor is None:
		floor = varianceFloor(frames)

	model = init
	previous = None

	for iteration in range(1, max_iters + 1):
		updated, loglik = emStep(model, frames, floor)

		if not(np.isfinite(loglik)):
			raise NonFiniteLikelihoodError(iteration)

		maybeTrigger(events, 'em-iteration', iteration, loglik)
		model = updated

		if previous is not None and (loglik - previous) / T < tol:
			break

		previous = loglik

	return model

def splitMixtures(model, epsilon = DEFAULT_EPSILON, count = None):
	'''
	Split components: each one is replaced by two copies with means shifted by ±ε√variance and half the weight.

	Parameters
	----------
	model : GmmModel
		The model.

	epsilon : float
		Perturbation, in standard deviations.

	count : int
		Number of components to split, the heaviest ones (all by default).

	Returns
	-------
	model : GmmModel
		The split model.
	'''

	M = model.num_components
	count = M if count is None else max(0, min(int(count), M))

	to_split = set(np.argsort(-model.weights, kind = 'stable')[:count].tolist())

	weights, means, variances = [], [], []

	for i in range(M):
		w, mu, var = model.weights[i], model.means[i], model.variances[i]

		if i in to_split:
			offset = epsilon * np.sqrt(var)
			weights += [w / 2, w / 2]
			means += [mu + offset, mu - offset]
			variances += [var, var]

		else:
			weights.append(w)
			means.append(mu)
			variances.append(var)

	weights = np.array(weights)
	return GmmModel(weights / weights.sum(), means, variances, label = model.label)

def growMixture(model, target):
	'''
	Split the heaviest components to get closer to a target size: doubling when possible, otherwise splitting only the missing number of components (e.g. 8 → 12).
	'''

	return splitMixtures(model, count = min(model.num_components, target - model.num_components))

def trainGmm(frames, num_components, *, em_iters = 20, tol = 1e-4, floor = None, label = None, events = None):
	'''
	Train a mixture by binary splitting: one Gaussian, then 2, 4, ... up to `num_components`, with EM at each size.

	Parameters
	----------
	frames : array_like
		Pooled frames.

	num_components : int
		Final number of components.

	em_iters, tol : int, float
		See `emFit()`.

	floor : ndarray|float
		Variance floor, `varianceFloor(frames)` by default.

	label : str
		Label of the model.

	events : Events
		Receives `em-stage` (size) before each size and `em-iteration` from `emFit()`.

	Raises
	------
	NotEnoughFramesError
		Fewer frames than components.

	Returns
	-------
	model : GmmModel
		The trained model.
	'''

	frames = asFrames(frames)

	if frames.shape[0] < num_components:
		raise NotEnoughFramesError(frames.shape[0], num_components)

	if floor is None:
		floor = varianceFloor(frames)

	model = GmmModel.single(frames, floor = floor, label = label)

	while True:
		maybeTrigger(events, 'em-stage', model.num_components)
		model = emFit(model, frames, em_iters, tol, floor, events = events)

		logger.debug('GMM %s: %d components trained on %d frames', label, model.num_components, frames.shape[0])

		if model.num_components >= num_components:
			return model

		model = growMixture(model, num_components)
