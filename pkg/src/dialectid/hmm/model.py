#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np

from .errors import *
from ..corpus.inventory import PhoneInventory
from ..gmm import GmmModel
from ..utils import jsonfiles

NUM_STATES = 3
SIL = 'sil'

HMMSET_FORMAT = 'hmmset'
HMMSET_VERSION = 1

def triphoneName(left, center, right):
	return f'{left}-{center}+{right}'

def parseTriphone(name):
	'''
	Split a triphone name `l-c+r`.

	Returns
	-------
	context : tuple|None
		(left, center, right), `None` if the name is not a triphone.
	'''

	left, sep1, rest = name.partition('-')
	center, sep2, right = rest.partition('+')

	if not(sep1 and sep2) or not(left and center and right):
		return None

	return left, center, right

def triphoneSequence(pronunciation):
	'''
	Word-internal triphones of a pronunciation, the word boundaries being `sil` contexts.
	'''

	padded = [SIL] + list(pronunciation) + [SIL]
	return [triphoneName(padded[i-1], padded[i], padded[i+1]) for i in range(1, len(padded) - 1)]

def transitionMatrix(self_probs):
	'''
	Left-to-right log transition matrix with entry and exit states.

	Parameters
	----------
	self_probs : sequence
		Self-loop probability of each emitting state, the rest going to the next state.

	Returns
	-------
	transitions : ndarray
		(N+2) × (N+2) log-probabilities.
	'''

	n = len(self_probs)
	linear = np.zeros((n + 2, n + 2))
	linear[0, 1] = 1.0

	for i, p in enumerate(self_probs, start = 1):
		linear[i, i] = p
		linear[i, i+1] = 1.0 - p

	with np.errstate(divide = 'ignore'):
		return np.log(linear)

class PhoneHmm():
	'''
	Left-to-right phone HMM: entry state, 3 emitting states with one mixture each, exit state.

	Parameters
	----------
	name : str
		Name of the model (monophone or triphone).

	transitions : array_like
		5 × 5 log transition matrix. Rows of the entry and emitting states normalize to 1, the exit row is empty; only self-loops and moves to the next state are allowed.

	emissions : list
		One GmmModel per emitting state.

	Raises
	------
	HmmInvariantError
		Invalid transitions or wrong number of emissions.
	'''

	def __init__(self, name, transitions, emissions):
		transitions = np.array(transitions, dtype = np.float64)
		n = len(emissions)

		if n < 1 or transitions.shape != (n + 2, n + 2):
			raise HmmInvariantError(f'{name}: {n} emissions for a {transitions.shape} transition matrix')

		allowed = np.zeros_like(transitions, dtype = bool)
		allowed[0, 1] = True
		for i in range(1, n + 1):
			allowed[i, i] = allowed[i, i+1] = True

		if np.any(np.isfinite(transitions[~allowed])):
			raise HmmInvariantError(f'{name}: only self-loops and forward moves to the next state are allowed')

		sums = np.exp(transitions[:n+1]).sum(axis = 1)
		if np.any(np.abs(sums - 1.0) > 1e-10):
			raise HmmInvariantError(f'{name}: transition rows sum to {sums.tolist()}')

		if len({e.dim for e in emissions}) != 1:
			raise HmmInvariantError(f'{name}: emissions of different dimensions')

		transitions.flags.writeable = False

		self._name = name
		self._transitions = transitions
		self._emissions = tuple(emissions)

		states = np.arange(1, n + 1)
		self._self_logprobs = transitions[states, states]
		self._next_logprobs = transitions[states, states + 1]

	@classmethod
	def flat(cls, name, emission, num_states = NUM_STATES):
		'''
		Model with a shared emission in every state and 0.5/0.5 transitions.
		'''

		return cls(name, transitionMatrix([0.5] * num_states), [emission] * num_states)

	@property
	def name(self):
		return self._name

	@property
	def num_states(self):
		return len(self._emissions)

	@property
	def transitions(self):
		return self._transitions

	@property
	def emissions(self):
		return self._emissions

	@property
	def self_logprobs(self):
		return self._self_logprobs

	@property
	def next_logprobs(self):
		'''
		Log-probability of leaving each emitting state forward (the last one to the exit state).
		'''

		return self._next_logprobs

	@property
	def dim(self):
		return self._emissions[0].dim

	@property
	def num_mixtures(self):
		return max(e.num_components for e in self._emissions)

	def renamed(self, name):
		return PhoneHmm(name, self._transitions, self._emissions)

	def withParameters(self, emissions = None, self_probs = None):
		'''
		Copy with new emissions and/or self-loop probabilities.
		'''

		transitions = self._transitions if self_probs is None else transitionMatrix(self_probs)
		return PhoneHmm(self._name, transitions, list(emissions or self._emissions))

	def emissionLogliks(self, frames):
		'''
		Log-density of each frame in each emitting state.

		Returns
		-------
		logliks : ndarray
			T × num_states matrix.
		'''

		return np.stack([e.logDensities(frames) for e in self._emissions], axis = 1)

	def toDict(self):
		return {
			'name': self._name,
			'transitions': np.exp(self._transitions).tolist(),
			'emissions': [e.toDict() for e in self._emissions]
		}

	@classmethod
	def fromDict(cls, obj):
		with np.errstate(divide = 'ignore'):
			transitions = np.log(np.array(obj['transitions'], dtype = np.float64))

		return cls(obj['name'], transitions, [GmmModel.fromDict(e) for e in obj['emissions']])

class HmmSet():
	'''
	Phone HMMs of a recognizer, with the tying map of context-dependent units.

	Parameters
	----------
	models : dict
		Physical model name → PhoneHmm.

	inventory : PhoneInventory
		Phones the set covers. Every one of them needs a model.

	tying : dict
		Unit name → physical model name.

	Raises
	------
	HmmInvariantError
		A phone has no model, a tying target does not exist, or models have different dimensions.
	'''

	def __init__(self, models, inventory, tying = None):
		self._models = dict(models)
		self._inventory = inventory
		self._tying = dict(tying or {})

		missing = [p for p in inventory if not(p in self._models)]
		if missing:
			raise HmmInvariantError(f'phones without model: {", ".join(missing)}')

		for unit, target in self._tying.items():
			if not(target in self._models):
				raise HmmInvariantError(f'`{unit}` is tied to the unknown model `{target}`')

		if len({m.dim for m in self._models.values()}) > 1:
			raise HmmInvariantError('models of different dimensions')

	def __len__(self):
		return len(self._models)

	def __contains__(self, unit):
		try:
			self.physicalName(unit)
			return True

		except UnknownUnitError:
			return False

	@property
	def models(self):
		return dict(self._models)

	@property
	def inventory(self):
		return self._inventory

	@property
	def tying(self):
		return dict(self._tying)

	@property
	def dim(self):
		return next(iter(self._models.values())).dim

	@property
	def num_mixtures(self):
		return max(m.num_mixtures for m in self._models.values())

	def physicalName(self, unit):
		'''
		Name of the model used for a unit: the unit itself, its tying target, or for an unknown triphone its center phone.

		Raises
		------
		UnknownUnitError
			The unit resolves to nothing.
		'''

		if unit in self._models:
			return unit

		if unit in self._tying:
			return self._tying[unit]

		context = parseTriphone(unit)
		if context is not None and context[1] in self._models:
			return context[1]

		raise UnknownUnitError(unit)

	def resolve(self, unit):
		'''
		Model used for a unit.

		Raises
		------
		UnknownUnitError
			The unit resolves to nothing.

		Returns
		-------
		model : PhoneHmm
			The physical model.
		'''

		return self._models[self.physicalName(unit)]

	def withModels(self, models):
		'''
		Copy with some models replaced.
		'''

		return HmmSet({**self._models, **models}, self._inventory, self._tying)

	def toDict(self):
		return {
			'inventory': self._inventory.toDict(),
			'tying': self._tying,
			'models': [self._models[name].toDict() for name in sorted(self._models)]
		}

	@classmethod
	def fromDict(cls, obj):
		models = [PhoneHmm.fromDict(m) for m in obj['models']]
		return cls({m.name: m for m in models}, PhoneInventory.fromDict(obj['inventory']), obj.get('tying'))

	def save(self, filename):
		jsonfiles.writeContainer(HMMSET_FORMAT, HMMSET_VERSION, self.toDict(), filename)

	@classmethod
	def load(cls, filename):
		return cls.fromDict(jsonfiles.readContainer(HMMSET_FORMAT, HMMSET_VERSION, filename))
