#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import abc
import enum
import logging

import numpy as np

from .bias import EXCLUDE, RETAIN, wordMembership, biasFromLabels, uprRecognize, reconfirmWord
from .decision import Decision
from .errors import *
from ..corpus.inventory import DialectLabel
from ..decode import buildPhoneLoop, buildWordGraph, viterbiDecode
from ..featext import fixLength

logger = logging.getLogger(__name__)

FALLBACK = 'fallback'
STANDALONE = 'standalone'

class PprVersion(str, enum.Enum):
	'''
	PPR versions, cumulative: V2 adds the grouped nasalized phone to V1, V3 drops the language models of V2.
	'''

	V1 = 'V1'
	V2 = 'V2'
	V3 = 'V3'

	@property
	def uses_lm(self):
		return self != PprVersion.V3

	@property
	def uses_nasalized(self):
		return self != PprVersion.V1

def _argmaxDialect(scores):
	'''
	Dialect with the highest score, LT on ties.
	'''

	return DialectLabel.CT if scores[DialectLabel.CT] > scores[DialectLabel.LT] else DialectLabel.LT

class Identifier(abc.ABC):
	'''
	A dialect identification system.
	'''

	method = None

	@abc.abstractmethod
	def identify(self, feat):
		'''
		Decide the dialect of an utterance.

		Parameters
		----------
		feat : FeatureMatrix
			The utterance.

		Returns
		-------
		decision : Decision
			The decision.
		'''

		pass

class GmmIdentifier(Identifier):
	'''
	Implicit system: per-dialect GMM likelihoods.

	Parameters
	----------
	classifier : GmmClassifier
		The dialect mixtures.
	'''

	method = 'gmm'

	def __init__(self, classifier):
		self._classifier = classifier

	def identify(self, feat):
		label, scores = self._classifier.classify(feat)
		return Decision(label, self.method, scores)

class CnnIdentifier(Identifier):
	'''
	Implicit system: 1D-CNN over fixed-length features (output 0 is LT).

	Parameters
	----------
	model : CnnModel
		The network.
	'''

	method = 'cnn'

	def __init__(self, model):
		self._model = model

	def identify(self, feat):
		x = fixLength(feat, self._model.input_shape[0]).frames
		probs = self._model.predict(x[np.newaxis])[0]
		scores = {DialectLabel.LT: float(probs[0]), DialectLabel.CT: float(probs[1])}

		return Decision(_argmaxDialect(scores), self.method, scores)

class PprIdentifier(Identifier):
	'''
	Parallel phone recognition: one phone loop per dialect, the best Viterbi path deciding.

	Parameters
	----------
	lt, ct : tuple
		(HmmSet, PhoneLM|None) of each dialect.

	version : PprVersion
		V1 (phone bigrams), V2 (V1 with the grouped nasalized phone in CT) or V3 (V2 scored by the acoustic models alone).

	beam : float|None
		Decoding beam.

	duration_normalize : bool
		`True` to report per-frame scores.

	Raises
	------
	MissingLanguageModelError
		V1/V2 without a language model.

	MissingNasalizedModelError
		V2/V3 with a CT recognizer not modelling the nasalized phone.
	'''

	def __init__(self, lt, ct, version = PprVersion.V3, *, beam = None, duration_normalize = False):
		self._version = PprVersion(version)
		self._beam = beam
		self._duration_normalize = duration_normalize

		systems = {DialectLabel.LT: lt, DialectLabel.CT: ct}

		if self._version.uses_lm:
			for dialect, (_, lm) in systems.items():
				if lm is None:
					raise MissingLanguageModelError(self._version.value, dialect.value)

		if self._version.uses_nasalized:
			symbol = ct[0].inventory.nasalized_symbol

			if symbol is None or not(symbol in ct[0]):
				raise MissingNasalizedModelError(self._version.value)

		self._graphs = {d: buildPhoneLoop(hmmset, lm if self._version.uses_lm else None) for d, (hmmset, lm) in systems.items()}

	@property
	def method(self):
		return f'ppr-{self._version.value.lower()}'

	@property
	def version(self):
		return self._version

	def decode(self, feat):
		'''
		Best phone path of each dialect recognizer.
		'''

		return {d: viterbiDecode(graph, feat, self._beam) for d, graph in self._graphs.items()}

	def identify(self, feat):
		results = self.decode(feat)
		scores = {d: r.total_loglik / (len(feat) if self._duration_normalize else 1) for d, r in results.items()}

		return Decision(_argmaxDialect(scores), self.method, scores, details = {'phones': {d.value: r.symbols for d, r in results.items()}})

class PlvcsrIdentifier(Identifier):
	'''
	Parallel lexicon-constrained recognition: one word loop per dialect, without language model.

	Parameters
	----------
	lt, ct : tuple
		(HmmSet, Lexicon) of each dialect.

	triphones : bool
		`True` if the models are triphones.

	beam : float|None
		Decoding beam.

	duration_normalize : bool
		`True` to report per-frame scores.
	'''

	method = 'plvcsr'

	def __init__(self, lt, ct, *, triphones = False, beam = None, duration_normalize = False):
		self._beam = beam
		self._duration_normalize = duration_normalize
		self._graphs = {d: buildWordGraph(hmmset, lexicon, triphones = triphones) for d, (hmmset, lexicon) in {DialectLabel.LT: lt, DialectLabel.CT: ct}.items()}

	def decode(self, feat):
		'''
		Best word path of each dialect recognizer.
		'''

		return {d: viterbiDecode(graph, feat, self._beam) for d, graph in self._graphs.items()}

	def identify(self, feat):
		results = self.decode(feat)
		scores = {d: r.total_loglik / (len(feat) if self._duration_normalize else 1) for d, r in results.items()}

		return Decision(_argmaxDialect(scores), self.method, scores, details = {'words': {d.value: r.symbols for d, r in results.items()}})

class _UprIdentifier(Identifier):
	'''
	Shared part of the unified systems: recognition, bias, and the handling of equiprobable utterances.

	Parameters
	----------
	unified : tuple
		(HmmSet, Lexicon) of the unified recognizer.

	lexicons : dict
		DialectLabel → Lexicon, giving the word memberships.

	fallback : Identifier
		System deciding equiprobable utterances (the P-LVCSR one), only used with the `fallback` accounting.

	exclude_common : bool
		`True` to leave words of both dialects out of the bias.

	accounting : str
		`fallback` to decide equiprobable utterances with the fallback system, `standalone` to leave them undecided.

	triphones : bool
		`True` if the unified models are triphones.

	beam : float|None
		Decoding beam.
	'''

	def __init__(self, unified, lexicons, fallback = None, *, exclude_common = True, accounting = FALLBACK, triphones = False, beam = None):
		if not(accounting in [FALLBACK, STANDALONE]):
			raise ValueError(f'unknown accounting `{accounting}`')

		self._hmmset, self._lexicon = unified
		self._lexicons = {DialectLabel(d): lex for d, lex in lexicons.items()}
		self._fallback = fallback
		self._exclude_common = exclude_common
		self._accounting = accounting
		self._triphones = triphones
		self._beam = beam

		if accounting == FALLBACK and fallback is None:
			raise ValueError('the fallback accounting needs a fallback system')

		self._graph = buildWordGraph(self._hmmset, self._lexicon, triphones = triphones)

	def recognize(self, feat):
		return uprRecognize(self._graph, feat, beam = self._beam)

	def memberships(self, words):
		return [wordMembership(w.word, self._lexicons, self._lexicon) for w in words]

	def wordLabels(self, words):
		'''
		Dialect label of each recognized word.
		'''

		return self.memberships(words)

	def identify(self, feat):
		words = self.recognize(feat)
		labels = self.wordLabels(words)
		bias = biasFromLabels(labels, self._exclude_common)

		details = {
			'words': [w.word for w in words],
			'labels': [getattr(l, 'value', l) for l in labels],
			'bias': bias
		}

		counts = {DialectLabel.LT: bias.lt_count, DialectLabel.CT: bias.ct_count}

		if bias.decisive:
			return Decision(bias.label, self.method, counts, details = details)

		if self._accounting == STANDALONE:
			return Decision(None, self.method, counts, details = details)

		fallback = self._fallback.identify(feat)
		return Decision(fallback.label, self.method, fallback.scores, True, details = details)

class Upr1Identifier(_UprIdentifier):
	'''
	UPR-1: the bias of the unified recognition, with the P-LVCSR decision for equiprobable utterances.
	'''

	method = 'upr1'

class Upr2Identifier(_UprIdentifier):
	'''
	UPR-2: UPR-1 where each recognized word is reconfirmed against its parallel word before computing the bias.

	Parameters
	----------
	pdict : ParallelDictionary
		The parallel dictionary.

	same_parallel : str
		`exclude` to leave the words identical to their parallel out of the bias, `retain` to keep their recognized dialect.

	Other parameters are those of `Upr1Identifier`.
	'''

	method = 'upr2'

	def __init__(self, unified, lexicons, pdict, fallback = None, *, same_parallel = EXCLUDE, **kwargs):
		if not(same_parallel in [EXCLUDE, RETAIN]):
			raise ValueError(f'unknown handling of identical parallel words `{same_parallel}`')

		super().__init__(unified, lexicons, fallback, **kwargs)
		self._pdict = pdict
		self._same_parallel = same_parallel

	@property
	def same_parallel(self):
		return self._same_parallel

	def wordLabels(self, words):
		return [
			reconfirmWord(w, m, self._pdict, self._hmmset, self._lexicon, triphones = self._triphones, same_parallel = self._same_parallel)
			for w, m in zip(words, self.memberships(words))
		]

def pprIdentify(lt_system, ct_system, feat, version = PprVersion.V3, **kwargs):
	'''
	One-shot PPR decision. Systems deciding many utterances should build a `PprIdentifier` once instead.
	'''

	return PprIdentifier(lt_system, ct_system, version, **kwargs).identify(feat)

def plvcsrIdentify(lt_system, ct_system, feat, **kwargs):
	return PlvcsrIdentifier(lt_system, ct_system, **kwargs).identify(feat)

def upr1Identify(unified, lexicons, plvcsr, feat, **kwargs):
	return Upr1Identifier(unified, lexicons, plvcsr, **kwargs).identify(feat)

def upr2Identify(unified, lexicons, pdict, plvcsr, feat, **kwargs):
	return Upr2Identifier(unified, lexicons, pdict, plvcsr, **kwargs).identify(feat)

def cnnIdentify(model, feat):
	return CnnIdentifier(model).identify(feat)
