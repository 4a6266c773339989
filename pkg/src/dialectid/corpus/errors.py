#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class CorpusError(Exception):
	'''
	Base class for exceptions occurring while handling corpus data (manifests, lexicons, dictionaries).
	'''

	pass

class ManifestFormatError(CorpusError):
	'''
	Exception raised when a manifest line cannot be parsed.

	Parameters
	----------
	filename : str
		Path to the manifest.

	line_number : int
		Number of the faulty line (starting at 1).

	reason : str
		What is wrong with the line.
	'''

	def __init__(self, filename, line_number, reason):
		super().__init__(f'{filename}:{line_number}: {reason}')
		self.filename = filename
		self.line_number = line_number
		self.reason = reason

class DuplicateUtteranceError(CorpusError):
	'''
	Exception raised when two records of a manifest share the same identifier.

	Parameters
	----------
	utt_id : str
		The duplicated identifier.

	line_number : int
		Line of the second occurrence.
	'''

	def __init__(self, utt_id, line_number = None):
		where = f' (line {line_number})' if line_number is not None else ''
		super().__init__(f'duplicate utterance id `{utt_id}`{where}')
		self.utt_id = utt_id
		self.line_number = line_number

class UnknownDialectError(CorpusError):
	'''
	Exception raised when a dialect tag is neither LT nor CT.

	Parameters
	----------
	tag : str
		The unknown tag.

	line_number : int
		Line where the tag has been found, if any.
	'''

	def __init__(self, tag, line_number = None):
		where = f' (line {line_number})' if line_number is not None else ''
		super().__init__(f'unknown dialect tag `{tag}`{where}')
		self.tag = tag
		self.line_number = line_number

class MissingTranscriptError(CorpusError):
	'''
	Exception raised when a record used to train an explicit system has no transcript.

	Parameters
	----------
	utt_id : str
		Identifier of the record.
	'''

	def __init__(self, utt_id):
		super().__init__(f'utterance `{utt_id}` has no transcript')
		self.utt_id = utt_id

class InventoryError(CorpusError):
	'''
	Exception raised when a phone inventory is inconsistent.

	Parameters
	----------
	reason : str
		Description of the inconsistency.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason

class UnknownPhoneError(CorpusError):
	'''
	Exception raised when a phone does not belong to the inventory.

	Parameters
	----------
	phone : str
		The unknown phone.

	context : str
		Where the phone has been found (word, transcript, ...).
	'''

	def __init__(self, phone, context = None):
		where = f' in `{context}`' if context is not None else ''
		super().__init__(f'phone `{phone}` is not in the inventory{where}')
		self.phone = phone
		self.context = context

class LexiconFormatError(CorpusError):
	'''
	Exception raised when a lexicon entry is malformed (e.g. empty pronunciation).

	Parameters
	----------
	filename : str
		Path to the lexicon, or `None` for an in-memory lexicon.

	line_number : int
		Number of the faulty line, if any.

	reason : str
		What is wrong.
	'''

	def __init__(self, filename, line_number, reason):
		super().__init__(f'{filename}:{line_number}: {reason}')
		self.filename = filename
		self.line_number = line_number
		self.reason = reason

class SpellingError(CorpusError):
	'''
	Exception raised when a spelling cannot be segmented into inventory phones.

	Parameters
	----------
	spelling : str
		The spelling.
	'''

	def __init__(self, spelling):
		super().__init__(f'`{spelling}` cannot be segmented into phones')
		self.spelling = spelling

class InsufficientSpeakersError(CorpusError):
	'''
	Exception raised when a dialect has too few speakers to be split without sharing any of them.

	Parameters
	----------
	dialect : str
		The dialect.

	count : int
		Number of distinct speakers found.
	'''

	def __init__(self, dialect, count):
		super().__init__(f'dialect {dialect} has {count} speaker(s), at least 2 are needed')
		self.dialect = dialect
		self.count = count

class SplitFractionError(CorpusError):
	'''
	Exception raised when the train fraction is not strictly between 0 and 1.

	Parameters
	----------
	fraction : float
		The invalid fraction.
	'''

	def __init__(self, fraction):
		super().__init__(f'train fraction must be in ]0, 1[, got {fraction}')
		self.fraction = fraction

class DictionaryFormatError(CorpusError):
	'''
	Exception raised when a rule table, manual table or parallel dictionary file is malformed.

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

class SynthSpecError(CorpusError):
	'''
	Exception raised when a synthetic corpus specification cannot be honoured.

	Parameters
	----------
	reason : str
		What is wrong with the specification.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason
