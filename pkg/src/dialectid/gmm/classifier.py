#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .em import trainGmm
from .errors import *
from .model import GmmModel
from ..corpus.inventory import DialectLabel
from ..utils import jsonfiles

CLASSIFIER_FORMAT = 'gmm-classifier'
CLASSIFIER_VERSION = 1

def classifyGmm(models, feat):
	'''
	Maximum likelihood dialect decision. Ties go to LT.

	Parameters
	----------
	models : dict
		DialectLabel → GmmModel.

	feat : FeatureMatrix
		The utterance.

	Raises
	------
	MissingDialectModelError
		A dialect has no model.

	GmmDimensionError
		Features and models dimensions differ.

	Returns
	-------
	label : DialectLabel
		The decision.

	scores : dict
		Utterance log-likelihood under each dialect model.
	'''

	scores = {}

	for dialect in DialectLabel:
		try:
			model = models[dialect]

		except KeyError:
			raise MissingDialectModelError(dialect.value)

		scores[dialect] = model.utteranceLoglik(feat)

	label = DialectLabel.CT if scores[DialectLabel.CT] > scores[DialectLabel.LT] else DialectLabel.LT

	return label, scores

class GmmClassifier():
	'''
	The implicit GMM system: one mixture per dialect.

	Parameters
	----------
	models : dict
		DialectLabel → GmmModel.
	'''

	def __init__(self, models):
		self._models = {DialectLabel(d): m for d, m in models.items()}

		for dialect in DialectLabel:
			if not(dialect in self._models):
				raise MissingDialectModelError(dialect.value)

	@property
	def models(self):
		return dict(self._models)

	@classmethod
	def train(cls, frames_by_dialect, num_components, *, em_iters = 20, tol = 1e-4, events = None):
		'''
		Train one mixture per dialect.

		Parameters
		----------
		frames_by_dialect : dict
			DialectLabel → pooled frames of the training utterances.

		num_components : int
			Size of the mixtures.

		em_iters, tol : int, float
			See `emFit()`.

		events : Events
			Passed to `trainGmm()`.

		Returns
		-------
		classifier : GmmClassifier
			The trained classifier.
		'''

		return cls({
			DialectLabel(d): trainGmm(frames, num_components, em_iters = em_iters, tol = tol, label = DialectLabel(d).value, events = events)
			for d, frames in frames_by_dialect.items()
		})

	def classify(self, feat):
		return classifyGmm(self._models, feat)

	def save(self, filename):
		jsonfiles.writeContainer(CLASSIFIER_FORMAT, CLASSIFIER_VERSION, {'models': {d.value: m.toDict() for d, m in self._models.items()}}, filename)

	@classmethod
	def load(cls, filename):
		obj = jsonfiles.readContainer(CLASSIFIER_FORMAT, CLASSIFIER_VERSION, filename)
		return cls({d: GmmModel.fromDict(m) for d, m in obj['models'].items()})
