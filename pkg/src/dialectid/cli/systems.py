#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Builders of the identification systems. Every `system_<name>` function receives the Pipeline and returns an Identifier, training the models it needs when `train` is `True`.
'''

import numpy as np

from ..cnn import CnnModel, buildDialectCnn, train as trainCnn
from ..corpus import DialectLabel
from ..decode import PhoneLM, estimateBigram
from ..did import CnnIdentifier, GmmIdentifier, PlvcsrIdentifier, PprIdentifier, PprVersion, Upr1Identifier, Upr2Identifier
from ..featext import computeTargetFrames, fixLength
from ..gmm import GmmClassifier
from ..hmm import HmmSet
from ..hmm.train import expandTriphones, flatStart, monophoneUnits, trainEmbedded, triphoneUnits

PLAIN = 'plain'
NASAL = 'nasal'

def _variantTransform(pipeline, dialect, variant):
	'''
	Pronunciation transform of a recognizer: CT without the nasalized class spells it out, LT never uses it.
	'''

	if DialectLabel(dialect) == DialectLabel.LT or variant == PLAIN:
		return pipeline.denasalized

	return None

def _phonesOf(corpus):
	return {p for _, prons in corpus for pron in prons for p in pron}

def monophones(pipeline, dialect, variant, *, train = False):
	'''
	Monophone recognizer of a dialect (`None` for the unified one), trained on the phones its transcripts use.
	'''

	if dialect == DialectLabel.LT:
		variant = PLAIN

	name = f'hmm-mono-{dialect.value.lower() if dialect else "unified"}-{variant}'
	hmm = pipeline.config['hmm']

	def build():
		corpus = pipeline.trainingSet(dialect, _variantTransform(pipeline, dialect or DialectLabel.CT, variant))
		inventory = pipeline.inventory.restrict(_phonesOf(corpus))

		hmmset = flatStart(inventory, np.vstack([f.frames for f, _ in corpus]))
		units = [(f, monophoneUnits(prons)) for f, prons in corpus]

		return trainEmbedded(hmmset, units, hmm['schedule'], hmm['monophone_iters'], events = pipeline.events)

	return pipeline.component(name, f'{name}.json', build, HmmSet.load, train = train)

def recognizer(pipeline, dialect, *, train = False):
	'''
	Word-level recognizer of a dialect (`None` for the unified one): triphones cloned from the monophones then re-trained, or the monophones themselves.
	'''

	hmm = pipeline.config['hmm']
	mono = monophones(pipeline, dialect, NASAL, train = train)

	if not(hmm['triphones']):
		return mono

	name = f'hmm-tri-{dialect.value.lower() if dialect else "unified"}'

	def build():
		corpus = pipeline.trainingSet(dialect, _variantTransform(pipeline, dialect or DialectLabel.CT, NASAL))
		hmmset = expandTriphones(mono, [prons for _, prons in corpus], hmm['triphone_min_count'])
		units = [(f, triphoneUnits(prons)) for f, prons in corpus]

		return trainEmbedded(hmmset, units, hmm['schedule'][-1:], hmm['triphone_iters'], events = pipeline.events)

	return pipeline.component(name, f'{name}.json', build, HmmSet.load, train = train)

def phoneLm(pipeline, dialect, variant, *, train = False):
	'''
	Phone bigram of a dialect over the phones of its recognizer.
	'''

	name = f'lm-{dialect.value.lower()}-{variant}'
	hmmset = monophones(pipeline, dialect, variant, train = train)

	def build():
		corpus = pipeline.trainingSet(dialect, _variantTransform(pipeline, dialect, variant))
		transcripts = [monophoneUnits(prons) for _, prons in corpus]

		return estimateBigram(transcripts, hmmset.inventory, pipeline.config.get('lm.k'))

	return pipeline.component(name, f'{name}.json', build, PhoneLM.load, train = train)

def system_gmm(pipeline, *, train = False):
	gmm = pipeline.config['gmm']

	def build():
		features = pipeline.features('train')
		frames = {d: np.vstack([features[r.utt_id].frames for r in pipeline.records('train') if r.dialect == d]) for d in DialectLabel}

		return GmmClassifier.train(frames, gmm['components'], em_iters = gmm['em_iters'], tol = gmm['tol'], events = pipeline.events)

	return GmmIdentifier(pipeline.component('gmm', 'gmm.json', build, GmmClassifier.load, train = train))

def system_cnn(pipeline, *, train = False):
	'''
	1D-CNN over fixed-length inputs: the mean training length plus a margin.
	'''

	cnn = pipeline.config['cnn']

	def build():
		features = pipeline.features('train')
		records = pipeline.records('train')

		target = computeTargetFrames([features[r.utt_id] for r in records], pipeline.config.get('features.target_margin'))
		dataset = [(fixLength(features[r.utt_id], target), r.dialect) for r in records]

		model = buildDialectCnn(input_frames = target, channels = dataset[0][0].dim, seed = cnn['seed'])
		model, _ = trainCnn(model, dataset, learning_rate = cnn['learning_rate'], batch_size = cnn['batch_size'], epochs = cnn['epochs'], seed = cnn['seed'], events = pipeline.events)

		return model

	return CnnIdentifier(pipeline.component('cnn', 'cnn.npz', build, CnnModel.load, train = train))

def _ppr(pipeline, version, train):
	did = pipeline.config['did']
	ct_variant = NASAL if version.uses_nasalized else PLAIN

	systems = {}

	for dialect, variant in [(DialectLabel.LT, PLAIN), (DialectLabel.CT, ct_variant)]:
		hmmset = monophones(pipeline, dialect, variant, train = train)
		lm = phoneLm(pipeline, dialect, variant, train = train) if version.uses_lm else None
		systems[dialect] = (hmmset, lm)

	return PprIdentifier(systems[DialectLabel.LT], systems[DialectLabel.CT], version, beam = did['beam'], duration_normalize = did['duration_normalize'])

def system_ppr_v1(pipeline, *, train = False):
	return _ppr(pipeline, PprVersion.V1, train)

def system_ppr_v2(pipeline, *, train = False):
	return _ppr(pipeline, PprVersion.V2, train)

def system_ppr_v3(pipeline, *, train = False):
	return _ppr(pipeline, PprVersion.V3, train)

def system_plvcsr(pipeline, *, train = False):
	did = pipeline.config['did']

	return PlvcsrIdentifier(
		(recognizer(pipeline, DialectLabel.LT, train = train), pipeline.lexicon(DialectLabel.LT)),
		(recognizer(pipeline, DialectLabel.CT, train = train), pipeline.lexicon(DialectLabel.CT)),
		triphones = pipeline.config.get('hmm.triphones'), beam = did['beam'], duration_normalize = did['duration_normalize']
	)

def _uprArguments(pipeline, train):
	did = pipeline.config['did']
	fallback = system_plvcsr(pipeline, train = train) if did['equiprobable_accounting'] == 'fallback' else None

	unified = (recognizer(pipeline, None, train = train), pipeline.unifiedLexicon())
	lexicons = {d: pipeline.lexicon(d) for d in DialectLabel}

	return (unified, lexicons), {
		'fallback': fallback,
		'exclude_common': did['exclude_common'],
		'accounting': did['equiprobable_accounting'],
		'triphones': pipeline.config.get('hmm.triphones'),
		'beam': did['beam']
	}

def system_upr1(pipeline, *, train = False):
	(unified, lexicons), kwargs = _uprArguments(pipeline, train)
	return Upr1Identifier(unified, lexicons, **kwargs)

def system_upr2(pipeline, *, train = False):
	(unified, lexicons), kwargs = _uprArguments(pipeline, train)
	return Upr2Identifier(unified, lexicons, pipeline.parallelDictionary(), same_parallel = pipeline.config.get('did.same_parallel'), **kwargs)
