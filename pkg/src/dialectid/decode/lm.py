#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np

from .errors import *
from ..corpus.inventory import PhoneInventory
from ..utils import jsonfiles

BOS = '<s>'
EOS = '</s>'

LM_FORMAT = 'phone-lm'
LM_VERSION = 1

class PhoneLM():
	'''
	Phone bigram model with add-k smoothing.
	Histories are the phones plus `<s>`; predicted symbols are the phones plus `</s>`, so V = |inventory| + 1.

	Parameters
	----------
	inventory : PhoneInventory
		The phones.

	bigram_counts : ndarray
		(V) × (V) counts, rows indexed by history (`<s>` last), columns by predicted symbol (`</s>` last).

	k : float
		Added count.
	'''

	def __init__(self, inventory, bigram_counts, k = 1.0):
		self._inventory = inventory
		self._phones = list(inventory)
		self._k = float(k)

		n = len(self._phones)
		counts = np.array(bigram_counts, dtype = np.float64)

		if counts.shape != (n + 1, n + 1):
			raise ValueError(f'expected {n + 1} × {n + 1} counts, got {counts.shape}')

		if self._k < 0 or np.any(counts < 0):
			raise ValueError('counts and k must be non-negative')

		counts.flags.writeable = False
		self._counts = counts

		self._histories = {p: i for i, p in enumerate(self._phones)}
		self._histories[BOS] = n
		self._symbols = {p: i for i, p in enumerate(self._phones)}
		self._symbols[EOS] = n

		V = n + 1
		totals = counts.sum(axis = 1, keepdims = True)

		with np.errstate(divide = 'ignore', invalid = 'ignore'):
			probs = np.where(totals + self._k * V > 0, (counts + self._k) / (totals + self._k * V), 1.0 / V)
			self._bigram = np.log(probs)

			# unigram over the predicted symbols, from the column totals
			unigram_counts = counts.sum(axis = 0)
			total = unigram_counts.sum()
			self._unigram = np.log((unigram_counts + self._k) / (total + self._k * V)) if total + self._k * V > 0 else np.full(V, -np.log(V))

	@property
	def inventory(self):
		return self._inventory

	@property
	def k(self):
		return self._k

	@property
	def smoothing(self):
		return {'method': 'add-k', 'k': self._k}

	@property
	def vocabulary_size(self):
		return len(self._phones) + 1

	def logProb(self, phone, history):
		'''
		log P(phone | history).

		Parameters
		----------
		phone : str
			A phone or `</s>`.

		history : str
			A phone or `<s>`.

		Raises
		------
		KeyError
			Unknown symbol.
		'''

		return float(self._bigram[self._histories[history], self._symbols[phone]])

	def unigramLogProb(self, phone):
		return float(self._unigram[self._symbols[phone]])

	@property
	def bigram(self):
		'''
		All conditional log-probabilities.

		Returns
		-------
		bigram : dict
			(history, phone) → log P(phone | history).
		'''

		return {(h, p): float(self._bigram[i, j]) for h, i in self._histories.items() for p, j in self._symbols.items()}

	@property
	def unigram(self):
		return {p: float(self._unigram[j]) for p, j in self._symbols.items()}

	def historyLogProbs(self, history):
		'''
		Distribution following a history, as a dict symbol → log-probability.
		'''

		i = self._histories[history]
		return {p: float(self._bigram[i, j]) for p, j in self._symbols.items()}

	def toDict(self):
		return {
			'inventory': self._inventory.toDict(),
			'smoothing': self.smoothing,
			'counts': self._counts.tolist()
		}

	@classmethod
	def fromDict(cls, obj):
		return cls(PhoneInventory.fromDict(obj['inventory']), obj['counts'], obj['smoothing']['k'])

	def save(self, filename):
		jsonfiles.writeContainer(LM_FORMAT, LM_VERSION, self.toDict(), filename)

	@classmethod
	def load(cls, filename):
		return cls.fromDict(jsonfiles.readContainer(LM_FORMAT, LM_VERSION, filename))

def estimateBigram(transcripts, inventory, k = 1.0):
	'''
	Estimate a phone bigram model, with sentence boundaries.

	Parameters
	----------
	transcripts : iterable
		Phone sequences.

	inventory : PhoneInventory
		The phones.

	k : float
		Added count of the add-k smoothing (0 for raw relative frequencies; unseen histories are then uniform).

	Raises
	------
	EmptyTranscriptsError
		No transcript.

	UnknownPhoneError
		A transcript holds a phone outside the inventory.

	Returns
	-------
	lm : PhoneLM
		The model.
	'''

	transcripts = [list(t) for t in transcripts]

	if not(transcripts):
		raise EmptyTranscriptsError()

	n = len(inventory)
	counts = np.zeros((n + 1, n + 1))

	for transcript in transcripts:
		inventory.check(transcript, ' '.join(transcript))
		indices = [inventory.index(p) for p in transcript]

		for h, p in zip([n] + indices, indices + [n]):
			counts[h, p] += 1

	return PhoneLM(inventory, counts, k)
