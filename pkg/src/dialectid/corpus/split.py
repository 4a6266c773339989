#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging

import numpy as np

from .errors import *
from .inventory import DialectLabel

logger = logging.getLogger(__name__)

def splitSpeakerDisjoint(records, train_fraction, seed, *, durations = None):
	'''
	Split records into a train and a test set such that no speaker appears in both.
	Each dialect is split independently: speakers are shuffled (seeded), sorted by total duration (longest first, stable), then each one goes to the side furthest below its target duration.

	Parameters
	----------
	records : list
		The UtteranceRecord instances.

	train_fraction : float
		Target fraction of the duration in the train set, strictly between 0 and 1.

	seed : int
		Seed of the shuffle breaking ties between speakers of equal duration.

	durations : dict
		Duration of each utterance. Utterances absent from it weigh 1.

	Raises
	------
	SplitFractionError
		The fraction is not in ]0, 1[.

	InsufficientSpeakersError
		A dialect has fewer than 2 speakers.

	Returns
	-------
	train : list
		Train records, in input order.

	test : list
		Test records, in input order.
	'''

	if not(0 < train_fraction < 1):
		raise SplitFractionError(train_fraction)

	durations = durations or {}
	rng = np.random.default_rng(seed)
	train_speakers = set()

	for dialect in DialectLabel:
		speaker_durations = {}

		for record in records:
			if record.dialect == dialect:
				speaker_durations[record.speaker_id] = speaker_durations.get(record.speaker_id, 0.0) + float(durations.get(record.utt_id, 1.0))

		if not(speaker_durations):
			continue

		if len(speaker_durations) < 2:
			raise InsufficientSpeakersError(dialect.value, len(speaker_durations))

		speakers = sorted(speaker_durations)
		speakers = [speakers[i] for i in rng.permutation(len(speakers))]
		speakers.sort(key = lambda s: -speaker_durations[s])

		total = sum(speaker_durations.values())
		targets = {'train': train_fraction * total, 'test': (1 - train_fraction) * total}
		assigned = {'train': [], 'test': []}
		filled = {'train': 0.0, 'test': 0.0}

		for speaker in speakers:
			deficits = {side: (targets[side] - filled[side]) / targets[side] for side in targets}
			side = 'train' if deficits['train'] >= deficits['test'] else 'test'

			assigned[side].append(speaker)
			filled[side] += speaker_durations[speaker]

		# both sides must hold at least one speaker
		for empty, full in [('train', 'test'), ('test', 'train')]:
			if not(assigned[empty]):
				smallest = min(assigned[full], key = lambda s: (speaker_durations[s], s))
				assigned[full].remove(smallest)
				assigned[empty].append(smallest)

		train_speakers.update(assigned['train'])

		logger.debug('%s split: %d train speakers, %d test speakers', dialect.value, len(assigned['train']), len(assigned['test']))

	train = [r for r in records if r.speaker_id in train_speakers]
	test = [r for r in records if not(r.speaker_id in train_speakers)]

	return train, test
