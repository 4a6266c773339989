#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging

import numpy as np

from .align import forcedAlign
from .errors import *
from .model import PhoneHmm, HmmSet, triphoneSequence, parseTriphone
from ..gmm import GmmModel, emStep, growMixture, varianceFloor
from ..gmm.model import asFrames
from ..utils.events import maybeTrigger

logger = logging.getLogger(__name__)

TRAINING_EVENTS = ['hmm-stage', 'hmm-iteration']

DEFAULT_SCHEDULE = (1, 2, 4, 8, 12, 16)
DEFAULT_ITERS_PER_STAGE = 5
DEFAULT_MIN_COUNT = 3

TRANSITION_MIN = 0.01
TRANSITION_MAX = 0.99

def flatStart(inventory, frames, *, floor = None):
	'''
	Identical models for every phone: one Gaussian with the global mean and variance in each state, 0.5/0.5 transitions.

	Parameters
	----------
	inventory : PhoneInventory
		The phones to model.

	frames : array_like
		Pooled training frames.

	floor : ndarray|float
		Variance floor, `varianceFloor(frames)` by default.

	Raises
	------
	EmptyTrainingDataError
		No frame.

	Returns
	-------
	hmmset : HmmSet
		The flat models.
	'''

	frames = asFrames(frames)

	if frames.size == 0:
		raise EmptyTrainingDataError()

	if floor is None:
		floor = varianceFloor(frames)

	emission = GmmModel.single(frames, floor = floor)

	return HmmSet({p: PhoneHmm.flat(p, emission) for p in inventory}, inventory)

class _Accumulator():
	'''
	Frames and transition counts gathered for each physical model from hard alignments.
	'''

	def __init__(self):
		self._frames = {}
		self._stay = {}
		self._leave = {}

	def add(self, hmmset, units, frames, alignment):
		states = alignment.states
		moves = np.append(states[1:] != states[:-1], True)
		offset = 0

		for unit in units:
			name = hmmset.physicalName(unit)
			model = hmmset.resolve(unit)
			n = model.num_states

			stay = self._stay.setdefault(name, np.zeros(n))
			leave = self._leave.setdefault(name, np.zeros(n))
			per_state = self._frames.setdefault(name, [[] for _ in range(n)])

			for s in range(n):
				where = states == offset + s
				per_state[s].append(frames[where])
				leave[s] += np.count_nonzero(moves & where)
				stay[s] += np.count_nonzero(~moves & where)

			offset += n

	def update(self, hmmset, floor):
		'''
		Re-estimate the models: one EM step per state mixture on its aligned frames, transition probabilities from the counts (clipped to [0.01, 0.99]).
		'''

		updated = {}

		for name, per_state in self._frames.items():
			model = hmmset.models[name]
			emissions = []

			for s, chunks in enumerate(per_state):
				frames = np.vstack(chunks) if chunks else np.zeros((0, model.dim))

				if frames.shape[0] > 0:
					emissions.append(emStep(model.emissions[s], frames, floor)[0])

				else:
					emissions.append(model.emissions[s])

			totals = self._stay[name] + self._leave[name]
			self_probs = np.exp(model.self_logprobs)
			seen = totals > 0
			self_probs[seen] = np.clip(self._stay[name][seen] / totals[seen], TRANSITION_MIN, TRANSITION_MAX)

			updated[name] = model.withParameters(emissions, self_probs)

		return hmmset.withModels(updated)

def splitSet(hmmset, target):
	'''
	Grow every state mixture up to `target` components.
	'''

	models = {}

	for name, model in hmmset.models.items():
		emissions = []

		for e in model.emissions:
			while e.num_components < target:
				e = growMixture(e, target)

			emissions.append(e)

		models[name] = model.withParameters(emissions)

	return hmmset.withModels(models)

def alignCorpus(hmmset, corpus):
	'''
	Align every utterance of a corpus, skipping the infeasible ones.

	Returns
	-------
	alignments : list
		(units, frames, Alignment) of each aligned utterance.

	skipped : int
		Number of utterances too short for their units.
	'''

	alignments = []
	skipped = 0

	for feat, units in corpus:
		frames = asFrames(feat)

		try:
			alignments.append((units, frames, forcedAlign(hmmset, frames, units)))

		except AlignmentInfeasibleError as e:
			skipped += 1
			logger.warning('skipping utterance %s: %s', getattr(feat, 'origin', '?'), e)

	return alignments, skipped

def trainEmbedded(hmmset, corpus, schedule = DEFAULT_SCHEDULE, iters_per_stage = DEFAULT_ITERS_PER_STAGE, *, floor = None, events = None):
	'''
	Viterbi embedded training.
	Each iteration aligns every utterance with the current models, then re-estimates the models from the aligned frames. Mixtures are grown at the beginning of each stage of the schedule.

	Parameters
	----------
	hmmset : HmmSet
		Initial models.

	corpus : list
		(FeatureMatrix, units) pairs, units being phones or triphones.

	schedule : sequence
		Number of mixture components of each stage.

	iters_per_stage : int
		Re-estimation iterations per stage.

	floor : ndarray|float
		Variance floor, computed on the pooled frames by default.

	events : Events
		Receives `hmm-stage` (stage, components) and `hmm-iteration` (stage, iteration, total loglik, skipped).

	Raises
	------
	EmptyTrainingDataError
		No utterance can be aligned.

	Returns
	-------
	hmmset : HmmSet
		The trained models.
	'''

	corpus = list(corpus)

	if floor is None:
		frames = [asFrames(f) for f, _ in corpus]

		if not(frames):
			raise EmptyTrainingDataError()

		floor = varianceFloor(np.vstack(frames))

	for stage, components in enumerate(schedule):
		if components > hmmset.num_mixtures:
			hmmset = splitSet(hmmset, components)

		maybeTrigger(events, 'hmm-stage', stage, components)

		for iteration in range(1, iters_per_stage + 1):
			alignments, skipped = alignCorpus(hmmset, corpus)

			if not(alignments):
				raise EmptyTrainingDataError()

			total = float(sum(a.total_loglik for _, _, a in alignments))
			maybeTrigger(events, 'hmm-iteration', stage, iteration, total, skipped)

			logger.debug('stage %d (%d mixtures), iteration %d: loglik %.3f, %d skipped', stage, components, iteration, total, skipped)

			accumulator = _Accumulator()
			for units, frames, alignment in alignments:
				accumulator.add(hmmset, units, frames, alignment)

			hmmset = accumulator.update(hmmset, floor)

	return hmmset

def countTriphones(transcripts):
	'''
	Occurrences of each word-internal triphone.

	Parameters
	----------
	transcripts : iterable
		Utterances, each a sequence of word pronunciations.

	Returns
	-------
	counts : dict
		Triphone → count.
	'''

	counts = {}

	for words in transcripts:
		for pron in words:
			for tri in triphoneSequence(pron):
				counts[tri] = counts.get(tri, 0) + 1

	return counts

def expandTriphones(hmmset, transcripts, min_count = DEFAULT_MIN_COUNT):
	'''
	Instantiate word-internal triphones by cloning their center monophone. Triphones seen fewer than `min_count` times are tied to the monophone instead.

	Parameters
	----------
	hmmset : HmmSet
		Trained monophones.

	transcripts : iterable
		Utterances, each a sequence of word pronunciations.

	min_count : int|float
		Occurrence threshold (`float('inf')` ties everything).

	Returns
	-------
	hmmset : HmmSet
		Monophones plus the instantiated triphones, with the tying map.
	'''

	models = hmmset.models
	tying = hmmset.tying

	for tri, count in sorted(countTriphones(transcripts).items()):
		center = parseTriphone(tri)[1]

		if count >= min_count:
			models[tri] = hmmset.resolve(center).renamed(tri)

		else:
			tying[tri] = hmmset.physicalName(center)

	logger.info('%d triphones instantiated, %d tied', len(models) - len(hmmset.models), len(tying) - len(hmmset.tying))

	return HmmSet(models, hmmset.inventory, tying)

def triphoneUnits(words):
	'''
	Triphone units of an utterance given the pronunciations of its words.
	'''

	return [tri for pron in words for tri in triphoneSequence(pron)]

def monophoneUnits(words):
	return [p for pron in words for p in pron]
