#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json
import os

import pytest

from dialectid.cli import *
from dialectid.cli.errors import ConfigError, InvalidSettingError, MissingModelError, MissingPathError, UnknownSettingError, UnknownSystemError
from dialectid.cli.main import cmdDecode
from dialectid.corpus import CorpusError, loadManifest
from dialectid.did import DecisionsFormatError, UnknownWordError, readDecisions
from dialectid.featext import AudioFormatError
from dialectid.gmm import NotEnoughFramesError
from dialectid.utils import jsonfiles

# configuration

def test_defaults():
	config = RunConfig()

	assert config.get('gmm.components') == 128
	assert config.get('did.equiprobable_accounting') == 'fallback'
	assert config.get('did.same_parallel') == 'exclude'
	assert config.systems == ['gmm']
	assert config.path('train') == os.path.join('.', 'train.tsv')
	assert config.path('models') == 'models'
	assert config.mfccConfig().num_cepstra == 13

def test_overrides(tmp_path):
	filename = tmp_path / 'config.json'
	filename.write_text(json.dumps({'gmm': {'components': 8, 'em_iters': 3}, 'paths': {'corpus': 'data'}}))

	config = RunConfig.load(str(filename), ['gmm.components=16', 'did.beam=200.5', 'run.systems=["gmm", "upr2"]', 'paths.corpus=other'])

	assert config.get('gmm.components') == 16
	assert config.get('gmm.em_iters') == 3
	assert config.get('did.beam') == 200.5
	assert config.systems == ['gmm', 'upr2']
	assert config.path('lexicon_ct') == os.path.join('other', 'lexicon_ct.txt')

def test_parse_override():
	assert parseOverride('hmm.schedule=[1, 2]') == ('hmm.schedule', [1, 2])
	assert parseOverride('paths.corpus=/data/tamil') == ('paths.corpus', '/data/tamil')
	assert parseOverride('did.exclude_common=false') == ('did.exclude_common', False)

	with pytest.raises(InvalidSettingError):
		parseOverride('components=3')

	with pytest.raises(InvalidSettingError):
		parseOverride('gmm.components')

@pytest.mark.parametrize('settings, error', [
	({'gmm': {'nope': 1}}, UnknownSettingError),
	({'run': {'systems': ['svm']}}, UnknownSystemError),
	({'run': {'systems': []}}, InvalidSettingError),
	({'split': {'train_fraction': 1.5}}, InvalidSettingError),
	({'hmm': {'schedule': [4, 2]}}, InvalidSettingError),
	({'did': {'equiprobable_accounting': 'ignore'}}, InvalidSettingError),
	({'did': {'beam': 0}}, InvalidSettingError),
	({'did': {'same_parallel': 'drop'}}, InvalidSettingError),
	({'features': {'frame_shift': 0.05}}, InvalidSettingError),
	({'run': {'workers': 0}}, InvalidSettingError)
])
def test_invalid_settings(settings, error):
	with pytest.raises(error):
		RunConfig(settings)

def test_missing_paths(tmp_path):
	config = RunConfig({'paths': {'corpus': str(tmp_path)}})

	with pytest.raises(MissingPathError):
		config.validate(check_paths = ['train'])

def test_digest():
	assert RunConfig().digest == RunConfig().digest
	assert RunConfig().digest != RunConfig({'gmm': {'components': 64}}).digest
	assert RunConfig().seeds == {'split': 0, 'cnn': 0}

def test_exit_codes():
	assert exitCode(UnknownSettingError('a.b')) == 1
	assert exitCode(MissingModelError('gmm', 'models/gmm.json')) == 2
	assert exitCode(AudioFormatError('x.wav', 'not a RIFF file')) == 2
	assert exitCode(DecisionsFormatError('x', 1, 'bad')) == 2
	assert exitCode(FileNotFoundError('x')) == 2
	assert exitCode(NotEnoughFramesError(1, 2)) == 3
	assert exitCode(UnknownWordError('zzz')) == 3
	assert exitCode(KeyError('x')) is None
	assert issubclass(UnknownSystemError, ConfigError)
	assert issubclass(CorpusError, Exception)

# commands

@pytest.fixture
def spec_file(tmp_path, small_spec):
	filename = tmp_path / 'spec.json'
	filename.write_text(json.dumps(small_spec.toDict()))

	return str(filename)

def test_synth_is_reproducible(tmp_path, spec_file, capsys):
	digests = []

	for name in ['a', 'b']:
		assert main(['synth', str(tmp_path / name), '--spec', spec_file, '--seed', '3']) == 0
		digests.append(capsys.readouterr().out.strip())

	assert digests[0] == digests[1]
	assert len(loadManifest(str(tmp_path / 'a' / 'manifest.tsv'))) == 24

def test_usage_errors(capsys):
	assert main(['identify', '--system', 'svm']) == 1
	assert main([]) == 1
	assert main(['train', '--set', 'gmm.nope=1']) == 1
	assert main(['--help']) == 0
	assert main(['decode', '--system', 'gmm', '--dialect', 'LT']) == 1

def test_identify_without_models(tmp_path, synth_corpus):
	output = tmp_path / 'output'
	code = main(['identify', '--system', 'gmm', '--set', f'paths.corpus={synth_corpus.directory}', '--set', f'paths.models={tmp_path / "models"}', '--set', f'paths.output={output}'])

	assert code == 2
	assert not((output / 'gmm.decisions').exists())

def test_output_needs_single_system(tmp_path, synth_corpus):
	code = main(['identify', '--system', 'gmm', '--system', 'cnn', '-o', str(tmp_path / 'x.decisions'), '--set', f'paths.corpus={synth_corpus.directory}', '--set', f'paths.output={tmp_path}'])

	assert code == 1

def test_train_identify_evaluate_report(tmp_path, synth_corpus, capsys):
	settings = [
		'--set', f'paths.corpus={synth_corpus.directory}',
		'--set', f'paths.models={tmp_path / "models"}',
		'--set', f'paths.work={tmp_path / "work"}',
		'--set', f'paths.output={tmp_path / "output"}',
		'--set', 'gmm.components=2',
		'--set', 'gmm.em_iters=3',
		'--set', 'run.workers=1'
	]

	assert main(['featext', *settings]) == 0
	assert main(['train', '--system', 'gmm', *settings]) == 0
	assert (tmp_path / 'models' / 'gmm.json').exists()
	assert jsonfiles.readContainer('run-meta', 1, str(tmp_path / 'models' / 'models.meta.json'))['systems'] == ['gmm']

	assert main(['identify', '--system', 'gmm', *settings]) == 0

	decisions_file = tmp_path / 'output' / 'gmm.decisions'
	decisions = readDecisions(str(decisions_file))
	assert len(decisions) == len(synth_corpus.test)
	assert os.path.exists(f'{decisions_file}.meta.json')

	report = str(tmp_path / 'gmm.json')
	capsys.readouterr()
	assert main(['evaluate', str(decisions_file), '-r', report, *settings]) == 0
	assert capsys.readouterr().out.startswith('gmm: accuracy')

	summary = str(tmp_path / 'summary.txt')
	assert main(['report', report, '-o', summary]) == 0
	assert open(summary).read().startswith('Identification accuracies')
	assert jsonfiles.readContainer('run-meta', 1, f'{summary}.meta.json')['reports'] == [report]

def test_evaluate_unknown_utterance(tmp_path, synth_corpus):
	decisions = tmp_path / 'foreign.decisions'
	decisions.write_text('nobody\tLT\tgmm\t0\t{}\n')

	assert main(['evaluate', str(decisions), '--set', f'paths.corpus={synth_corpus.directory}']) == 2

def test_build_parser():
	args = buildParser().parse_args(['identify', '--system', 'upr2', '-s', 'did.beam=100', '-vv', '--progress'])

	assert args.systems == ['upr2']
	assert args.overrides == ['did.beam=100']
	assert args.verbose == 2
	assert args.progress
	assert args.split == 'test'

	args = buildParser().parse_args(['decode', '--system', 'ppr-v3', '--dialect', 'CT'])

	assert args.func == cmdDecode
	assert args.split == 'test'
	assert args.output is None
