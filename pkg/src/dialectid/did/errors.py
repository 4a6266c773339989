#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class DidError(Exception):
	'''
	Base class for exceptions occurring in the dialect identification systems.
	'''

	pass

class MissingLanguageModelError(DidError):
	'''
	Exception raised when a PPR version needing phone language models lacks one.

	Parameters
	----------
	version : str
		The PPR version.

	dialect : str
		The dialect without model.
	'''

	def __init__(self, version, dialect):
		super().__init__(f'PPR {version} needs a phone language model for {dialect}')
		self.version = version
		self.dialect = dialect

class MissingNasalizedModelError(DidError):
	'''
	Exception raised when a PPR version needing the grouped nasalized phone finds no model for it in the CT recognizer.

	Parameters
	----------
	version : str
		The PPR version.
	'''

	def __init__(self, version):
		super().__init__(f'PPR {version} needs a CT recognizer modelling the nasalized phone class')
		self.version = version

class UnknownWordError(DidError):
	'''
	Exception raised when the dialect membership of a word cannot be determined.

	Parameters
	----------
	word : str
		The word.
	'''

	def __init__(self, word):
		super().__init__(f'word `{word}` is in no lexicon')
		self.word = word

class EmptyEvaluationError(DidError):
	'''
	Exception raised when an evaluation has no utterance.
	'''

	def __init__(self):
		super().__init__('nothing to evaluate')

class DecisionsFormatError(DidError):
	'''
	Exception raised when a decisions file is malformed.

	Parameters
	----------
	filename : str
		Path to the file.

	line_number : int
		Number of the faulty line.

	reason : str
		What is wrong.
	'''

	def __init__(self, filename, line_number, reason):
		super().__init__(f'{filename}:{line_number}: {reason}')
		self.filename = filename
		self.line_number = line_number
		self.reason = reason

class MissingTruthError(DidError):
	'''
	Exception raised when a decision concerns an utterance without reference label.

	Parameters
	----------
	utt_id : str
		The utterance.
	'''

	def __init__(self, utt_id):
		super().__init__(f'no reference dialect for `{utt_id}`')
		self.utt_id = utt_id
