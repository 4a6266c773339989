#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import logging

import numpy as np
import tabulate

from .decision import Decision
from .errors import *
from ..corpus.inventory import DialectLabel
from ..utils import jsonfiles
from ..utils.events import maybeTrigger

logger = logging.getLogger(__name__)

REPORT_FORMAT = 'evaluation-report'
REPORT_VERSION = 1

EVALUATION_EVENTS = ['utterance-identified']

@dataclasses.dataclass(frozen = True)
class Metrics():
	'''
	Results of a system on a test set.
	`confusion[i, j]` is the fraction of utterances of dialect i (LT, CT) identified as j; an undecided or failed utterance counts as identified as the other dialect.
	The row of a dialect absent from the references is all zeros, so the rows sum to 1 only when both dialects are present.
	`per_utterance` holds (utt_id, truth, Decision or error message) rows sorted by utterance id.
	'''

	method: str
	accuracy: float
	confusion: np.ndarray
	per_utterance: tuple
	errors: int = 0
	undecided: int = 0

	def summaryTable(self):
		'''
		Plain-text confusion table.
		'''

		rows = [[f'{d.value} →', *[f'{v:.4f}' for v in self.confusion[i]]] for i, d in enumerate(DialectLabel)]
		table = tabulate.tabulate(rows, headers = ['', *[d.value for d in DialectLabel]], tablefmt = 'simple')

		return f'{self.method}: accuracy {100 * self.accuracy:.2f}% ({len(self.per_utterance)} utterances, {self.undecided} undecided, {self.errors} errors)\n{table}'

	def toDict(self):
		rows = []

		for utt_id, truth, outcome in self.per_utterance:
			row = {'utt_id': utt_id, 'truth': truth.value}

			if isinstance(outcome, Decision):
				row.update(outcome.toDict())

			else:
				row['error'] = str(outcome)

			rows.append(row)

		return {
			'method': self.method,
			'accuracy': self.accuracy,
			'confusion': self.confusion.tolist(),
			'labels': [d.value for d in DialectLabel],
			'errors': self.errors,
			'undecided': self.undecided,
			'utterances': rows
		}

	def save(self, filename):
		jsonfiles.writeContainer(REPORT_FORMAT, REPORT_VERSION, self.toDict(), filename)

	@classmethod
	def load(cls, filename):
		'''
		Read a report written by `save()`. Failed utterances get back their error message.

		Raises
		------
		ContainerFormatError
			Not a report.

		Returns
		-------
		metrics : Metrics
			The scores.
		'''

		report = jsonfiles.readContainer(REPORT_FORMAT, REPORT_VERSION, filename)
		rows = []

		for row in report['utterances']:
			if 'error' in row:
				outcome = row['error']

			else:
				label = DialectLabel(row['label']) if row['label'] is not None else None
				outcome = Decision(label, row['method'], row['scores'], row['fallback_used'])

			rows.append((row['utt_id'], DialectLabel(row['truth']), outcome))

		return cls(report['method'], report['accuracy'], np.array(report['confusion']), tuple(rows), report['errors'], report['undecided'])

def evaluateDecisions(decisions, truth, method = None):
	'''
	Score decisions against reference labels.

	Parameters
	----------
	decisions : dict
		Utterance id → Decision, or the error (exception or message) of a failed utterance.

	truth : dict
		Utterance id → DialectLabel.

	method : str
		Name of the system (taken from the decisions by default).

	Raises
	------
	EmptyEvaluationError
		No decision.

	MissingTruthError
		A decision concerns an utterance without reference.

	Returns
	-------
	metrics : Metrics
		The scores.
	'''

	if not(decisions):
		raise EmptyEvaluationError()

	counts = np.zeros((2, 2))
	index = {d: i for i, d in enumerate(DialectLabel)}
	rows = []
	errors = undecided = 0

	for utt_id in sorted(decisions):
		if not(utt_id in truth):
			raise MissingTruthError(utt_id)

		reference = DialectLabel(truth[utt_id])
		outcome = decisions[utt_id]

		if isinstance(outcome, Decision):
			method = method or outcome.method
			predicted = outcome.label

			if predicted is None:
				undecided += 1
				predicted = reference.other

		else:
			errors += 1
			predicted = reference.other

		counts[index[reference], index[DialectLabel(predicted)]] += 1
		rows.append((utt_id, reference, outcome))

	totals = counts.sum(axis = 1, keepdims = True)

	for d, total in zip(DialectLabel, totals[:, 0]):
		if total == 0:
			logger.warning('no %s utterance among the references, its confusion row is all zeros', d.value)

	confusion = np.divide(counts, totals, out = np.zeros_like(counts), where = totals > 0)
	accuracy = float(np.trace(counts) / counts.sum())

	return Metrics(method, accuracy, confusion, tuple(rows), errors, undecided)

def identifyAll(system, utterances, *, events = None):
	'''
	Run a system on utterances, recording failures instead of stopping.

	Parameters
	----------
	system : Identifier
		The system.

	utterances : iterable
		(utt_id, FeatureMatrix) pairs.

	events : Events
		Receives `utterance-identified` (utt_id, outcome) after each utterance.

	Returns
	-------
	decisions : dict
		Utterance id → Decision, or the exception raised.
	'''

	decisions = {}

	for utt_id, feat in utterances:
		try:
			decisions[utt_id] = system.identify(feat)

		except Exception as e:
			logger.warning('%s failed on %s: %s', system.method, utt_id, e)
			decisions[utt_id] = e

		maybeTrigger(events, 'utterance-identified', utt_id, decisions[utt_id])

	return decisions

def evaluate(system, utterances, truth, *, events = None):
	'''
	Identify test utterances and score the decisions.

	Parameters
	----------
	system : Identifier
		The system.

	utterances : iterable
		(utt_id, FeatureMatrix) pairs.

	truth : dict
		Utterance id → DialectLabel.

	events : Events
		See `identifyAll()`.

	Returns
	-------
	metrics : Metrics
		The scores.
	'''

	return evaluateDecisions(identifyAll(system, utterances, events = events), truth, system.method)

def summaryReport(metrics):
	'''
	Accuracy and confusion tables of several systems.

	Parameters
	----------
	metrics : list
		Metrics instances, in display order.

	Returns
	-------
	report : str
		The tables.
	'''

	accuracy = tabulate.tabulate([[m.method, f'{100 * m.accuracy:.2f}'] for m in metrics], headers = ['System', 'Accuracy (%)'], tablefmt = 'simple')

	rows = []
	for m in metrics:
		for i, d in enumerate(DialectLabel):
			rows.append([m.method if i == 0 else '', d.value, *[f'{v:.2f}' for v in m.confusion[i]]])

	confusion = tabulate.tabulate(rows, headers = ['System', 'Truth', *[d.value for d in DialectLabel]], tablefmt = 'simple')

	return f'Identification accuracies\n\n{accuracy}\n\nConfusions\n\n{confusion}\n'
