#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import copy
import json
import os

from .errors import *
from ..featext import MfccConfig
from ..utils import jsonfiles
from ..utils.string import objectDigest

SYSTEMS = ['gmm', 'cnn', 'ppr-v1', 'ppr-v2', 'ppr-v3', 'plvcsr', 'upr1', 'upr2']

# systems exposing the best path of each dialect recognizer
DECODING_SYSTEMS = ['ppr-v1', 'ppr-v2', 'ppr-v3', 'plvcsr']

DEFAULTS = {
	'paths': {
		'corpus': '.',
		'train': None,
		'test': None,
		'lexicon_lt': None,
		'lexicon_ct': None,
		'inventory': None,
		'rules': None,
		'manual': None,
		'models': 'models',
		'work': 'work',
		'output': 'output'
	},
	'features': {
		'frame_length': 0.025,
		'frame_shift': 0.01,
		'num_mel_filters': 26,
		'num_cepstra': 13,
		'pre_emphasis': 0.97,
		'delta_window': 2,
		'nfft': None,
		'low_freq': 0.0,
		'high_freq': None,
		'cms': True,
		'trim_db': -40.0,
		'min_speech_frames': 1,
		'target_margin': 0
	},
	'split': {
		'train_fraction': 0.7,
		'seed': 0
	},
	'gmm': {
		'components': 128,
		'em_iters': 20,
		'tol': 1e-4
	},
	'hmm': {
		'schedule': [1, 2, 4, 8, 12, 16],
		'monophone_iters': 5,
		'triphones': True,
		'triphone_min_count': 3,
		'triphone_iters': 2
	},
	'lm': {
		'k': 1.0
	},
	'cnn': {
		'learning_rate': 1e-3,
		'batch_size': 16,
		'epochs': 10,
		'seed': 0
	},
	'did': {
		'exclude_common': True,
		'equiprobable_accounting': 'fallback',
		'same_parallel': 'exclude',
		'duration_normalize': False,
		'beam': None,
		'word_final_only': True
	},
	'run': {
		'systems': ['gmm'],
		'workers': None
	}
}

# files looked for in the corpus folder when not set
CORPUS_FILES = {
	'train': 'train.tsv',
	'test': 'test.tsv',
	'lexicon_lt': 'lexicon_lt.txt',
	'lexicon_ct': 'lexicon_ct.txt',
	'inventory': 'inventory.json',
	'rules': 'rules.tsv',
	'manual': 'manual.tsv'
}

def parseOverride(assignment):
	'''
	Parse a `section.key=value` assignment. The value is read as JSON when possible, kept as a string otherwise.

	Raises
	------
	InvalidSettingError
		No `=` or no section.

	Returns
	-------
	key : str
		The dotted key.

	value : object
		The value.
	'''

	key, sep, raw = assignment.partition('=')
	key = key.strip()

	if not(sep) or key.count('.') != 1:
		raise InvalidSettingError(key, raw, 'expected `section.key=value`')

	try:
		value = json.loads(raw)

	except json.JSONDecodeError:
		value = raw

	return key, value

class RunConfig():
	'''
	Settings of a run, by section (`paths`, `features`, `split`, `gmm`, `hmm`, `lm`, `cnn`, `did`, `run`).
	Built from the defaults, then a JSON file, then `section.key=value` overrides, each layer replacing the values of the previous one.

	Parameters
	----------
	settings : dict
		Section → {key: value} replacing the defaults.

	Raises
	------
	ConfigError
		Unknown setting or invalid value.
	'''

	def __init__(self, settings = None):
		self._settings = copy.deepcopy(DEFAULTS)

		for section, values in (settings or {}).items():
			for key, value in values.items():
				self.set(f'{section}.{key}', value)

		self.validate()

	@classmethod
	def load(cls, filename = None, overrides = ()):
		'''
		Build a configuration from a file and command-line overrides.

		Parameters
		----------
		filename : str
			JSON file, `None` to only use the defaults.

		overrides : list
			`section.key=value` assignments.

		Returns
		-------
		config : RunConfig
			The configuration.
		'''

		settings = jsonfiles.read(filename) if filename else {}

		if type(settings) is not dict or not(all(type(v) is dict for v in settings.values())):
			raise InvalidSettingError('<file>', filename, 'expected an object of sections')

		settings = copy.deepcopy(settings)

		for assignment in overrides:
			key, value = parseOverride(assignment)
			section, name = key.split('.')
			settings.setdefault(section, {})[name] = value

		return cls(settings)

	def set(self, key, value):
		section, _, name = key.partition('.')

		if not(section in self._settings) or not(name in self._settings[section]):
			raise UnknownSettingError(key)

		self._settings[section][name] = value

	def get(self, key):
		'''
		Value of a setting.

		Parameters
		----------
		key : str
			`section.key`.
		'''

		section, _, name = key.partition('.')

		try:
			return self._settings[section][name]

		except KeyError:
			raise UnknownSettingError(key)

	def __getitem__(self, section):
		return copy.deepcopy(self._settings[section])

	def toDict(self):
		return copy.deepcopy(self._settings)

	@property
	def digest(self):
		'''
		Short hash of the canonical settings.
		'''

		return objectDigest(self._settings)

	@property
	def systems(self):
		return list(self._settings['run']['systems'])

	@property
	def workers(self):
		return self._settings['run']['workers'] or os.cpu_count() or 1

	@property
	def seeds(self):
		return {'split': self._settings['split']['seed'], 'cnn': self._settings['cnn']['seed']}

	def path(self, name):
		'''
		A path setting; corpus files default to their usual name in the corpus folder.
		'''

		value = self._settings['paths'][name]

		if value is None and name in CORPUS_FILES:
			value = os.path.join(self._settings['paths']['corpus'], CORPUS_FILES[name])

		return value

	def mfccConfig(self):
		return MfccConfig.fromDict(self._settings['features'])

	def _check(self, key, ok, reason):
		if not(ok):
			raise InvalidSettingError(key, self.get(key), reason)

	def validate(self, *, check_paths = ()):
		'''
		Check the values.

		Parameters
		----------
		check_paths : list
			Path settings which must exist.

		Raises
		------
		UnknownSystemError
			A selected system does not exist.

		InvalidSettingError
			A value is out of range.

		MissingPathError
			A checked path does not exist.
		'''

		systems = self._settings['run']['systems']
		self._check('run.systems', type(systems) is list and systems, 'expected a non-empty list')

		for name in systems:
			if not(name in SYSTEMS):
				raise UnknownSystemError(name, SYSTEMS)

		workers = self.get('run.workers')
		self._check('run.workers', workers is None or (type(workers) is int and workers >= 1), 'expected a positive integer')

		self._check('split.train_fraction', 0 < self.get('split.train_fraction') < 1, 'expected a fraction in ]0, 1[')
		self._check('gmm.components', type(self.get('gmm.components')) is int and self.get('gmm.components') >= 1, 'expected a positive integer')

		schedule = self.get('hmm.schedule')
		self._check('hmm.schedule', schedule and all(type(m) is int and m >= 1 for m in schedule) and list(schedule) == sorted(schedule), 'expected increasing positive sizes')

		self._check('lm.k', self.get('lm.k') >= 0, 'expected a non-negative count')
		self._check('cnn.learning_rate', self.get('cnn.learning_rate') >= 0, 'expected a non-negative rate')
		self._check('cnn.batch_size', self.get('cnn.batch_size') >= 1, 'expected a positive size')
		self._check('did.equiprobable_accounting', self.get('did.equiprobable_accounting') in ['fallback', 'standalone'], 'expected `fallback` or `standalone`')
		self._check('did.same_parallel', self.get('did.same_parallel') in ['exclude', 'retain'], 'expected `exclude` or `retain`')
		self._check('did.beam', self.get('did.beam') is None or self.get('did.beam') > 0, 'expected a positive beam or null')

		try:
			self.mfccConfig()

		except Exception as e:
			raise InvalidSettingError('features', self._settings['features'], str(e))

		for name in check_paths:
			path = self.path(name)

			if path is None or not(os.path.exists(path)):
				raise MissingPathError(f'paths.{name}', path)
