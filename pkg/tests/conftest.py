#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os

import numpy as np
import pytest

from dialectid.cli import RunConfig
from dialectid.corpus import PhoneInventory, SynthSpec, generateSynthetic

SMALL_SPEC = {
	'words_per_dialect': 10,
	'utterances_per_dialect': 12,
	'speakers_per_dialect': 4,
	'edge_silence_frames': [3, 6]
}

@pytest.fixture
def rng():
	return np.random.default_rng(0)

@pytest.fixture(scope = 'session')
def inventory():
	return PhoneInventory.default()

@pytest.fixture(scope = 'session')
def small_spec():
	return SynthSpec.fromDict(SMALL_SPEC)

@pytest.fixture(scope = 'session')
def synth_corpus(tmp_path_factory, small_spec):
	'''
	A small synthetic corpus, generated once per session.
	'''

	return generateSynthetic(small_spec, 1, str(tmp_path_factory.mktemp('synth')))

def smallRunSettings(corpus_dir, root, **sections):
	'''
	Settings of a quick run on a small corpus: tiny models, one worker.
	'''

	settings = {
		'paths': {
			'corpus': corpus_dir,
			'models': os.path.join(root, 'models'),
			'work': os.path.join(root, 'work'),
			'output': os.path.join(root, 'output')
		},
		'gmm': {'components': 4, 'em_iters': 5},
		'hmm': {'schedule': [1, 2], 'monophone_iters': 2, 'triphones': False},
		'cnn': {'epochs': 1, 'batch_size': 4},
		'run': {'workers': 1}
	}

	for section, values in sections.items():
		settings.setdefault(section, {}).update(values)

	return settings

@pytest.fixture(scope = 'session')
def run_settings():
	return smallRunSettings

@pytest.fixture
def make_config(synth_corpus, tmp_path):
	'''
	Builds the configuration of a quick run on the session corpus, sections overriding the small settings.
	'''

	def make(**sections):
		return RunConfig(smallRunSettings(synth_corpus.directory, str(tmp_path), **sections))

	return make
