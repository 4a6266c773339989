#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import concurrent.futures
import logging
import os

import numpy as np

from . import systems as systems_module
from .config import DECODING_SYSTEMS, SYSTEMS
from .errors import *
from .. import __version__
from ..cnn import TRAINING_EVENTS as CNN_EVENTS
from ..corpus import DialectLabel, Lexicon, PhoneInventory, buildParallelDictionary, defaultRules, loadManifest, loadManualTable, loadRules, mergeLexicons
from ..decode import writeDecodes
from ..did import EVALUATION_EVENTS, evaluateDecisions, identifyAll, readDecisions, relabelWords, removeNasalization, writeDecisions
from ..featext import FeatureArchive, MfccConfig, extractFeatures, readWav
from ..gmm import EM_EVENTS
from ..hmm.train import TRAINING_EVENTS as HMM_EVENTS
from ..utils import Events, Registry, jsonfiles
from ..utils.string import hash as shortHash, objectDigest

logger = logging.getLogger(__name__)

META_FORMAT = 'run-meta'
META_VERSION = 1

PIPELINE_EVENTS = [
	'features-start', 'features-progress', 'features-end',
	'component-start', 'component-end',
	'identify-start', 'identify-end'
]

def _extractOne(job):
	'''
	Features of one utterance (run in worker processes).
	'''

	utt_id, path, cfg, trim_db, min_speech_frames, cms = job
	return extractFeatures(readWav(path), MfccConfig.fromDict(cfg), origin = utt_id, trim_db = trim_db, min_speech_frames = min_speech_frames, cms = cms)

def _identifyChunk(identifier, chunk):
	'''
	Decisions of a chunk of utterances (run in worker processes). Exceptions are returned as messages.
	'''

	decisions = identifyAll(identifier, chunk)
	return {utt_id: (d if not(isinstance(d, Exception)) else RuntimeError(f'{type(d).__name__}: {d}')) for utt_id, d in decisions.items()}

def writeMeta(filename, command, config, **extra):
	'''
	Write the reproducibility block of an output: `<filename>.meta.json`.

	Parameters
	----------
	filename : str
		The output the block describes.

	command : str
		Command which produced it.

	config : RunConfig
		Configuration of the run.
	'''

	jsonfiles.writeContainer(META_FORMAT, META_VERSION, {
		'command': command,
		'toolkit_version': __version__,
		'config_digest': config.digest,
		'seeds': config.seeds,
		**extra
	}, f'{filename}.meta.json')

class Pipeline():
	'''
	Train, load and run the identification systems of a configuration.
	The builder of each system is a `system_<name>` function of the `systems` module, found through a Registry. Models are shared between systems (the P-LVCSR recognizers are the fallback of the unified systems, for instance) and stored in the models folder, one file per component.

	Parameters
	----------
	config : RunConfig
		The configuration.
	'''

	def __init__(self, config):
		self._config = config

		self.events = Events(PIPELINE_EVENTS + EM_EVENTS + HMM_EVENTS + CNN_EVENTS + EVALUATION_EVENTS)

		self._systems = Registry(r'^system_(?P<name>[a-z0-9_]+)$')
		self._systems.loadFromModule(systems_module)

		self._components = {}
		self._features = {}
		self._records = {}
		self._lexicons = None
		self._inventory = None

	@property
	def config(self):
		return self._config

	@property
	def systems(self):
		'''
		Names of the available systems.
		'''

		return [name.replace('_', '-') for name in self._systems.names]

	def _modelsPath(self, filename):
		return os.path.join(self._config.get('paths.models'), filename)

	# data

	@property
	def inventory(self):
		'''
		The phone inventory of the corpus (the default one if the corpus has none).
		'''

		if self._inventory is None:
			path = self._config.path('inventory')
			self._inventory = PhoneInventory.load(path) if os.path.exists(path) else PhoneInventory.default()

		return self._inventory

	def lexicon(self, dialect):
		'''
		Lexicon of a dialect. CT pronunciations are relabeled with the grouped nasalized vowel.
		'''

		if self._lexicons is None:
			lt = Lexicon.load(self._config.path('lexicon_lt'), DialectLabel.LT, inventory = self.inventory)
			ct = Lexicon.load(self._config.path('lexicon_ct'), DialectLabel.CT, inventory = self.inventory)

			word_final_only = self._config.get('did.word_final_only')
			ct = Lexicon({w: relabelWords(ct.pronunciations(w), self.inventory, word_final_only = word_final_only) for w in ct.words}, dialect_tag = DialectLabel.CT)

			self._lexicons = {DialectLabel.LT: lt, DialectLabel.CT: ct}

		return self._lexicons[DialectLabel(dialect)]

	def unifiedLexicon(self):
		return mergeLexicons(self.lexicon(DialectLabel.LT), self.lexicon(DialectLabel.CT), inventory = self.inventory)

	def parallelDictionary(self):
		'''
		Parallel dictionary from the rule and manual tables of the corpus (default rules and no manual entry if absent).
		'''

		rules_path, manual_path = self._config.path('rules'), self._config.path('manual')

		rules = loadRules(rules_path) if os.path.exists(rules_path) else defaultRules(self.inventory)
		manual = loadManualTable(manual_path) if os.path.exists(manual_path) else []

		return buildParallelDictionary(rules, manual, self.lexicon(DialectLabel.LT), self.lexicon(DialectLabel.CT))

	def records(self, split):
		'''
		Records of the `train` or `test` manifest.
		'''

		if not(split in self._records):
			path = self._config.path(split)
			self._config.validate(check_paths = [split])
			self._records[split] = (path, loadManifest(path))

		return self._records[split][1]

	def truth(self, split = 'test'):
		return {r.utt_id: r.dialect for r in self.records(split)}

	def features(self, split):
		'''
		Features of the utterances of a split, extracted once and cached in the work folder (the cache is keyed by the features settings and the manifest content).

		Returns
		-------
		features : dict
			Utterance id → FeatureMatrix.
		'''

		if split in self._features:
			return self._features[split]

		records = self.records(split)
		manifest = self._records[split][0]

		with open(manifest, 'rb') as f:
			key = objectDigest({'features': self._config['features'], 'manifest': shortHash(f.read())})

		cache = os.path.join(self._config.get('paths.work'), f'{split}-{key}.feats')

		if os.path.exists(cache):
			logger.info('reading %s features from %s', split, cache)
			self._features[split] = FeatureArchive.read(cache)
			return self._features[split]

		settings = self._config['features']
		cfg = self._config.mfccConfig().toDict()
		jobs = [(r.utt_id, r.audioPath(manifest), cfg, settings['trim_db'], settings['min_speech_frames'], settings['cms']) for r in records]

		self.events.trigger('features-start', split, len(jobs))
		features = []

		if self._config.workers == 1:
			for job in jobs:
				features.append(_extractOne(job))
				self.events.trigger('features-progress', split, len(features))

		else:
			with concurrent.futures.ProcessPoolExecutor(max_workers = self._config.workers) as pool:
				for feat in pool.map(_extractOne, jobs, chunksize = 8):
					features.append(feat)
					self.events.trigger('features-progress', split, len(features))

		FeatureArchive.write(features, cache)
		self.events.trigger('features-end', split)

		self._features[split] = {f.origin: f for f in features}
		return self._features[split]

	def trainingSet(self, dialect = None, transform = None):
		'''
		Training utterances with the pronunciations of their words.

		Parameters
		----------
		dialect : DialectLabel
			Keep only this dialect, `None` for both.

		transform : callable
			Applied to each pronunciation (receives the dialect and the phones).

		Returns
		-------
		corpus : list
			(FeatureMatrix, list of pronunciations) pairs. Utterances without transcript or with unknown words are skipped.
		'''

		features = self.features('train')
		corpus = []
		skipped = 0

		for record in self.records('train'):
			if dialect is not None and record.dialect != DialectLabel(dialect):
				continue

			lexicon = self.lexicon(record.dialect)

			if not(record.transcript) or not(all(w in lexicon for w in record.transcript)):
				skipped += 1
				continue

			prons = [tuple(lexicon.pronunciations(w)[0]) for w in record.transcript]

			if transform is not None:
				prons = [tuple(transform(record.dialect, p)) for p in prons]

			corpus.append((features[record.utt_id], prons))

		if skipped:
			logger.warning('%d training utterances skipped (no transcript or unknown words)', skipped)

		return corpus

	def denasalized(self, dialect, phones):
		return removeNasalization(phones, self.inventory)

	# components

	def component(self, name, filename, build, load, *, train = False):
		'''
		A model shared between systems: built and saved in training runs, loaded otherwise.

		Parameters
		----------
		name : str
			Name of the component.

		filename : str
			File name in the models folder.

		build : callable
			Builds the component.

		load : callable
			Loads the component from a file.

		train : bool
			`True` to (re)build the component.

		Raises
		------
		MissingModelError
			The component is needed, not trained, and this is not a training run.

		Returns
		-------
		component : object
			The component.
		'''

		if name in self._components:
			return self._components[name]

		path = self._modelsPath(filename)

		if train:
			self.events.trigger('component-start', name)
			logger.info('training %s', name)

			component = build()
			os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok = True)
			component.save(path)

			self.events.trigger('component-end', name)

		elif os.path.exists(path):
			component = load(path)

		else:
			raise MissingModelError(name, path)

		self._components[name] = component
		return component

	def identifier(self, system, *, train = False):
		'''
		Identification system of a name.

		Parameters
		----------
		system : str
			One of `gmm`, `cnn`, `ppr-v1`, `ppr-v2`, `ppr-v3`, `plvcsr`, `upr1`, `upr2`.

		train : bool
			`True` to train the models it needs.

		Raises
		------
		UnknownSystemError
			Unknown name.

		Returns
		-------
		identifier : Identifier
			The system.
		'''

		key = system.replace('-', '_')

		if not(key in self._systems):
			raise UnknownSystemError(system, SYSTEMS)

		return self._systems.call(key, self, train = train)

	# commands

	def train(self, systems = None):
		'''
		Train the models of some systems (the configured ones by default) and write the reproducibility block of the models folder.
		'''

		systems = systems or self._config.systems

		for system in systems:
			self.identifier(system, train = True)

		writeMeta(os.path.join(self._config.get('paths.models'), 'models'), 'train', self._config, systems = list(systems), components = sorted(self._components))

	def identify(self, system, split = 'test'):
		'''
		Identify the utterances of a split, in parallel if several workers are configured.

		Returns
		-------
		decisions : dict
			Utterance id → Decision or exception, sorted by utterance id.
		'''

		identifier = self.identifier(system)
		utterances = sorted(self.features(split).items())

		self.events.trigger('identify-start', system, len(utterances))

		if self._config.workers == 1 or len(utterances) < 2:
			decisions = identifyAll(identifier, utterances, events = self.events)

		else:
			chunks = np.array_split(np.arange(len(utterances)), min(len(utterances), 4 * self._config.workers))
			decisions = {}

			with concurrent.futures.ProcessPoolExecutor(max_workers = self._config.workers) as pool:
				futures = [pool.submit(_identifyChunk, identifier, [utterances[i] for i in chunk]) for chunk in chunks if len(chunk)]

				for future in concurrent.futures.as_completed(futures):
					for utt_id, decision in future.result().items():
						decisions[utt_id] = decision
						self.events.trigger('utterance-identified', utt_id, decision)

		self.events.trigger('identify-end', system)

		return dict(sorted(decisions.items()))

	def identifyToFile(self, system, filename, split = 'test'):
		'''
		Identify a split and write the decisions file with its reproducibility block.
		'''

		decisions = self.identify(system, split)
		writeDecisions(decisions, filename)
		writeMeta(filename, 'identify', self._config, system = system, split = split, utterances = len(decisions))

		return decisions

	def evaluateFile(self, decisions_filename, report_filename = None, split = 'test'):
		'''
		Score a decisions file against the labels of a manifest.

		Returns
		-------
		metrics : Metrics
			The scores.
		'''

		metrics = evaluateDecisions(readDecisions(decisions_filename), self.truth(split))

		if report_filename is not None:
			metrics.save(report_filename)
			writeMeta(report_filename, 'evaluate', self._config, decisions = decisions_filename, accuracy = metrics.accuracy)

		return metrics

	def decodeToFile(self, system, dialect, filename, split = 'test'):
		'''
		Write the best path of one dialect recognizer of a system on every utterance of a split.

		Parameters
		----------
		system : str
			One of `ppr-v1`, `ppr-v2`, `ppr-v3`, `plvcsr`.

		dialect : DialectLabel|str
			The recognizer.

		filename : str
			Decodes file to write.

		split : str
			`train` or `test`.

		Raises
		------
		UnknownSystemError
			The system decodes no unit sequence.

		Returns
		-------
		results : dict
			Utterance id → DecodeResult.
		'''

		if not(system in DECODING_SYSTEMS):
			raise UnknownSystemError(system, DECODING_SYSTEMS)

		identifier = self.identifier(system)
		dialect = DialectLabel(dialect)

		results = {utt_id: identifier.decode(feat)[dialect] for utt_id, feat in sorted(self.features(split).items())}

		writeDecodes(results, filename)
		writeMeta(filename, 'decode', self._config, system = system, dialect = dialect.value, split = split, utterances = len(results))

		return results
