#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
The `dialectid` command: one executable, one subcommand per step of an experiment.
'''

import argparse
import logging
import os
import sys

from .config import DECODING_SYSTEMS, SYSTEMS, RunConfig
from .errors import *
from .pipeline import Pipeline, writeMeta
from ..cnn import CnnError
from ..corpus import CorpusError, SynthSpec, generateSynthetic
from ..decode import DecodeError
from ..did import DecisionsFormatError, DidError, Metrics, MissingTruthError, summaryReport
from ..featext import FeatextError
from ..gmm import GmmError
from ..hmm import HmmError
from ..ui import PipelineUI
from ..utils import AtomicFile
from ..utils.errors import ContainerError

logger = logging.getLogger(__name__)

LOG_LEVEL_VARIABLE = 'DIALECTID_LOG_LEVEL'

EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_COMPUTE = 3

# checked in order: the did data errors come before DidError
EXIT_CODES = [
	(ConfigError, EXIT_USAGE),
	((CorpusError, FeatextError, MissingModelError, ContainerError, DecisionsFormatError, MissingTruthError, OSError), EXIT_DATA),
	((GmmError, HmmError, DecodeError, DidError, CnnError), EXIT_COMPUTE)
]

def exitCode(error):
	'''
	Exit status of a command which raised an exception.

	Parameters
	----------
	error : Exception
		The exception.

	Returns
	-------
	code : int
		The status, `None` if the exception is not an expected one.
	'''

	for classes, code in EXIT_CODES:
		if isinstance(error, classes):
			return code

	return None

def configureLogging(verbosity = 0):
	'''
	Log level from the `-v` flags, or from the environment when none is given.
	'''

	if verbosity > 0:
		level = logging.INFO if verbosity == 1 else logging.DEBUG

	else:
		level = os.environ.get(LOG_LEVEL_VARIABLE, 'WARNING').upper()

	logging.basicConfig(level = level, format = '%(levelname)s %(name)s: %(message)s')

def _pipeline(args):
	config = RunConfig.load(args.config, args.overrides)
	pipeline = Pipeline(config)

	if args.progress:
		PipelineUI(pipeline)

	return pipeline

def cmdSynth(args):
	'''
	Generate a synthetic corpus.
	'''

	spec = SynthSpec.load(args.spec) if args.spec else SynthSpec()
	corpus = generateSynthetic(spec, args.seed, args.output)

	logger.info('synthetic corpus written in %s (%d utterances)', corpus.directory, len(corpus.records))
	print(corpus.digest)

def cmdFeatext(args):
	'''
	Extract the features of the splits into the work folder.
	'''

	pipeline = _pipeline(args)

	for split in args.splits:
		features = pipeline.features(split)
		print(f'{split}: {len(features)} utterances')

def cmdTrain(args):
	pipeline = _pipeline(args)
	pipeline.train(args.systems or None)

def cmdIdentify(args):
	'''
	Identify a split with each selected system, one decisions file per system.
	'''

	pipeline = _pipeline(args)
	output = pipeline.config.get('paths.output')
	os.makedirs(output, exist_ok = True)

	systems = args.systems or pipeline.config.systems

	if args.output and len(systems) > 1:
		raise InvalidSettingError('--output', args.output, 'a single decisions file needs a single system')

	for system in systems:
		filename = args.output or os.path.join(output, f'{system}.decisions')
		decisions = pipeline.identifyToFile(system, filename, args.split)

		failed = sum(1 for d in decisions.values() if isinstance(d, Exception))
		if failed:
			logger.warning('%s: %d utterances failed', system, failed)

		print(filename)

def cmdDecode(args):
	'''
	Best path of one dialect recognizer on every utterance of a split.
	'''

	pipeline = _pipeline(args)
	filename = args.output or os.path.join(pipeline.config.get('paths.output'), f'{args.system}-{args.dialect.lower()}.decodes')
	os.makedirs(os.path.dirname(os.path.abspath(filename)), exist_ok = True)

	pipeline.decodeToFile(args.system, args.dialect, filename, args.split)
	print(filename)

def cmdEvaluate(args):
	pipeline = _pipeline(args)
	metrics = pipeline.evaluateFile(args.decisions, args.report, args.split)

	print(metrics.summaryTable())

def cmdReport(args):
	'''
	Accuracy and confusion tables of several evaluation reports.
	'''

	report = summaryReport([Metrics.load(filename) for filename in args.reports])

	if args.output:
		with AtomicFile(args.output, 'w') as f:
			f.write(report)

		config = RunConfig.load(args.config, args.overrides)
		writeMeta(args.output, 'report', config, reports = list(args.reports))

	print(report, end = '')

def buildParser():
	'''
	Parser of the command line.
	'''

	common = argparse.ArgumentParser(add_help = False)
	common.add_argument('-c', '--config', help = 'JSON configuration file')
	common.add_argument('-s', '--set', dest = 'overrides', action = 'append', default = [], metavar = 'SECTION.KEY=VALUE', help = 'override a setting')
	common.add_argument('-v', '--verbose', action = 'count', default = 0, help = 'more logs (repeat for debug)')
	common.add_argument('--progress', action = 'store_true', help = 'show the progress in the terminal')

	parser = argparse.ArgumentParser(prog = 'dialectid', description = 'Spoken dialect identification (LT/CT).')
	subparsers = parser.add_subparsers(dest = 'command', required = True)

	synth = subparsers.add_parser('synth', parents = [common], help = 'generate a synthetic corpus')
	synth.add_argument('output', help = 'output folder')
	synth.add_argument('--spec', help = 'JSON generator settings')
	synth.add_argument('--seed', type = int, default = 0)
	synth.set_defaults(func = cmdSynth)

	featext = subparsers.add_parser('featext', parents = [common], help = 'extract the features')
	featext.add_argument('--split', dest = 'splits', action = 'append', choices = ['train', 'test'], help = 'split to extract (both by default)')
	featext.set_defaults(func = cmdFeatext)

	train = subparsers.add_parser('train', parents = [common], help = 'train the models of some systems')
	train.add_argument('--system', dest = 'systems', action = 'append', choices = SYSTEMS)
	train.set_defaults(func = cmdTrain)

	identify = subparsers.add_parser('identify', parents = [common], help = 'identify the utterances of a split')
	identify.add_argument('--system', dest = 'systems', action = 'append', choices = SYSTEMS)
	identify.add_argument('--split', default = 'test', choices = ['train', 'test'])
	identify.add_argument('-o', '--output', help = 'decisions file (single system)')
	identify.set_defaults(func = cmdIdentify)

	decode = subparsers.add_parser('decode', parents = [common], help = 'write the best path of a dialect recognizer')
	decode.add_argument('--system', required = True, choices = DECODING_SYSTEMS)
	decode.add_argument('--dialect', required = True, choices = ['LT', 'CT'])
	decode.add_argument('--split', default = 'test', choices = ['train', 'test'])
	decode.add_argument('-o', '--output', help = 'decodes file')
	decode.set_defaults(func = cmdDecode)

	evaluate = subparsers.add_parser('evaluate', parents = [common], help = 'score a decisions file')
	evaluate.add_argument('decisions', help = 'decisions file')
	evaluate.add_argument('--split', default = 'test', choices = ['train', 'test'])
	evaluate.add_argument('-r', '--report', help = 'JSON report to write')
	evaluate.set_defaults(func = cmdEvaluate)

	report = subparsers.add_parser('report', parents = [common], help = 'tables of several reports')
	report.add_argument('reports', nargs = '+', help = 'JSON reports written by `evaluate`')
	report.add_argument('-o', '--output', help = 'text file to write')
	report.set_defaults(func = cmdReport)

	return parser

def main(argv = None):
	'''
	Run a command.

	Parameters
	----------
	argv : list
		Arguments, those of the process by default.

	Returns
	-------
	code : int
		Exit status: 0 success, 1 usage or configuration error, 2 data error, 3 compute error.
	'''

	parser = buildParser()

	try:
		args = parser.parse_args(argv)

	except SystemExit as e:
		return EXIT_SUCCESS if e.code == 0 else EXIT_USAGE

	if args.command == 'featext' and not(args.splits):
		args.splits = ['train', 'test']

	configureLogging(args.verbose)

	try:
		args.func(args)

	except Exception as e:
		code = exitCode(e)

		if code is None:
			raise

		logger.error('%s failed: %s: %s', args.command, type(e).__name__, e)
		return code

	return EXIT_SUCCESS

if __name__ == '__main__':
	sys.exit(main())
