#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses

import numpy as np

from .errors import *
from ..gmm.model import asFrames

@dataclasses.dataclass(frozen = True)
class Segment():
	'''
	A unit aligned on frames [start, end).
	'''

	unit: str
	start: int
	end: int
	loglik: float

	@property
	def num_frames(self):
		return self.end - self.start

@dataclasses.dataclass(frozen = True)
class Alignment():
	'''
	Result of a forced alignment.
	`states` holds, for each frame, the index of its state in the concatenated chain (unit index × 3 + state).
	'''

	segments: tuple
	total_loglik: float
	states: np.ndarray = dataclasses.field(compare = False, repr = False)

	@property
	def units(self):
		return [s.unit for s in self.segments]

def chainParameters(hmmset, units, frames):
	'''
	Emission and transition scores of the linear chain of the units' states.

	Returns
	-------
	emissions : ndarray
		T × S emission log-likelihoods.

	self_logprobs, next_logprobs : ndarray
		S values each, the last `next` being the exit of the last unit.

	models : list
		The physical model of each unit.
	'''

	models = [hmmset.resolve(u) for u in units]

	cache = {}
	columns = []

	for model in models:
		if not(model.name in cache):
			cache[model.name] = model.emissionLogliks(frames)

		columns.append(cache[model.name])

	emissions = np.hstack(columns)
	self_logprobs = np.concatenate([m.self_logprobs for m in models])
	next_logprobs = np.concatenate([m.next_logprobs for m in models])

	return emissions, self_logprobs, next_logprobs, models

def viterbiChain(emissions, self_logprobs, next_logprobs):
	'''
	Best path through a left-to-right chain, starting in the first state and leaving the last one through its exit.
	On equal scores, staying in a state wins over coming from the previous one.

	Parameters
	----------
	emissions : ndarray
		T × S emission log-likelihoods.

	self_logprobs, next_logprobs : ndarray
		Transition log-probabilities of each state.

	Returns
	-------
	states : ndarray
		State index of each frame.

	score : float
		Score of the path, exit transition included.
	'''

	T, S = emissions.shape

	delta = np.full(S, -np.inf)
	delta[0] = emissions[0, 0]
	moved = np.zeros((T, S), dtype = bool)

	for t in range(1, T):
		stay = delta + self_logprobs
		move = np.full(S, -np.inf)
		move[1:] = delta[:-1] + next_logprobs[:-1]

		moved[t] = move > stay
		delta = np.where(moved[t], move, stay) + emissions[t]

	score = delta[S-1] + next_logprobs[S-1]

	states = np.empty(T, dtype = np.int64)
	s = S - 1

	for t in range(T - 1, -1, -1):
		states[t] = s

		if moved[t, s]:
			s -= 1

	return states, float(score)

def pathScores(states, emissions, self_logprobs, next_logprobs):
	'''
	Score contributed by each frame of a chain path: its emission plus the transition leaving it.
	'''

	T = len(states)
	scores = emissions[np.arange(T), states].copy()

	leaving = np.empty(T)
	moves = np.append(states[1:] != states[:-1], True)
	leaving[moves] = next_logprobs[states[moves]]
	leaving[~moves] = self_logprobs[states[~moves]]

	return scores + leaving

def forcedAlign(hmmset, feat, units):
	'''
	Viterbi alignment of an utterance with a fixed sequence of units.

	Parameters
	----------
	hmmset : HmmSet
		The models.

	feat : FeatureMatrix|ndarray
		The utterance.

	units : sequence
		Phones or triphones, resolved through `hmmset`.

	Raises
	------
	ValueError
		No unit.

	UnknownUnitError
		A unit resolves to no model.

	AlignmentInfeasibleError
		Fewer frames than states in the chain.

	Returns
	-------
	alignment : Alignment
		The segments and their log-likelihoods (emissions plus transitions, including the exits), summing to the total.
	'''

	units = list(units)

	if not(units):
		raise ValueError('forced alignment on an empty unit sequence')

	frames = asFrames(feat)
	models = [hmmset.resolve(u) for u in units]

	required = sum(m.num_states for m in models)
	if frames.shape[0] < required:
		raise AlignmentInfeasibleError(required, frames.shape[0])

	emissions, self_logprobs, next_logprobs, models = chainParameters(hmmset, units, frames)
	states, total = viterbiChain(emissions, self_logprobs, next_logprobs)

	scores = pathScores(states, emissions, self_logprobs, next_logprobs)
	offsets = np.cumsum([0] + [m.num_states for m in models])
	unit_of_frame = np.searchsorted(offsets, states, side = 'right') - 1

	segments = []
	for i, unit in enumerate(units):
		where = np.flatnonzero(unit_of_frame == i)
		segments.append(Segment(unit, int(where[0]), int(where[-1]) + 1, float(np.sum(scores[where]))))

	return Alignment(tuple(segments), total, states)
