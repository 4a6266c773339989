#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import enum
import json

from .errors import *
from ..corpus.inventory import DialectLabel
from ..utils import AtomicFile

# dialect label of a word left out of the bias
EXCLUDED = 'EXCLUDED'

UNDECIDED = 'NONE'
ERROR = 'ERROR'

class Verdict(str, enum.Enum):
	LT = 'LT'
	CT = 'CT'
	EQUIPROBABLE = 'EQUIPROBABLE'

@dataclasses.dataclass(frozen = True)
class Decision():
	'''
	Output of a dialect identification system.
	`label` is `None` when a system leaves the utterance undecided (equiprobable bias scored standalone).
	'''

	label: DialectLabel
	method: str
	scores: dict = dataclasses.field(default_factory = dict)
	fallback_used: bool = False
	details: dict = dataclasses.field(default_factory = dict, compare = False)

	def toDict(self):
		return {
			'label': self.label.value if self.label is not None else None,
			'method': self.method,
			'scores': {str(getattr(k, 'value', k)): v for k, v in self.scores.items()},
			'fallback_used': self.fallback_used
		}

@dataclasses.dataclass(frozen = True)
class BiasResult():
	lt_count: int
	ct_count: int
	excluded: int
	verdict: Verdict

	@property
	def decisive(self):
		return self.verdict != Verdict.EQUIPROBABLE

	@property
	def label(self):
		'''
		The dialect of a decisive verdict, `None` otherwise.
		'''

		return DialectLabel(self.verdict.value) if self.decisive else None

@dataclasses.dataclass(frozen = True)
class WordSegment():
	'''
	A recognized word, with its frames [start, end) and the phones it has been recognized with.
	'''

	word: str
	start: int
	end: int
	features: object = dataclasses.field(repr = False, compare = False)
	loglik: float = 0.0
	phones: tuple = ()

	def __post_init__(self):
		if self.end <= self.start:
			raise ValueError(f'empty word segment [{self.start}, {self.end})')

def writeDecisions(decisions, filename):
	'''
	Write a decisions file, sorted by utterance id, atomically.
	Each line is `utt_id<TAB>label<TAB>method<TAB>fallback<TAB>scores`, the label being `NONE` for an undecided utterance; failed utterances are written as `utt_id<TAB>ERROR<TAB>message`.

	Parameters
	----------
	decisions : dict
		Utterance id → Decision, or the exception raised while identifying it.

	filename : str
		Path to the file.
	'''

	with AtomicFile(filename, 'w') as f:
		for utt_id in sorted(decisions):
			decision = decisions[utt_id]

			if isinstance(decision, Decision):
				d = decision.toDict()
				label = d['label'] if d['label'] is not None else UNDECIDED
				scores = json.dumps(d['scores'], sort_keys = True)
				f.write(f'{utt_id}\t{label}\t{d["method"]}\t{int(d["fallback_used"])}\t{scores}\n')

			else:
				message = ' '.join(str(decision).split()) or type(decision).__name__
				f.write(f'{utt_id}\t{ERROR}\t{message}\n')

def readDecisions(filename):
	'''
	Read a decisions file written by `writeDecisions()`.

	Raises
	------
	DecisionsFormatError
		Malformed line.

	Returns
	-------
	decisions : dict
		Utterance id → Decision, or the error message (a string) of failed utterances.
	'''

	decisions = {}

	with open(filename, 'r', encoding = 'utf-8') as f:
		for line_number, line in enumerate(f, start = 1):
			line = line.rstrip('\n')

			if not(line.strip()):
				continue

			columns = line.split('\t')

			if len(columns) == 3 and columns[1] == ERROR:
				decisions[columns[0]] = columns[2]
				continue

			if len(columns) != 5:
				raise DecisionsFormatError(filename, line_number, 'expected 5 tab-separated columns')

			utt_id, label, method, fallback, scores = columns

			try:
				label = None if label == UNDECIDED else DialectLabel(label)
				scores = json.loads(scores)

			except ValueError as e:
				raise DecisionsFormatError(filename, line_number, str(e))

			decisions[utt_id] = Decision(label, method, scores, fallback == '1')

	return decisions
