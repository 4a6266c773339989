#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .inventory import DialectLabel, Membership
from ..utils import AtomicFile

UNIFIED = 'UNIFIED'

class Lexicon():
	'''
	Map words to one or more pronunciations (phone sequences).
	A lexicon is tagged with its dialect, or `UNIFIED` when it merges both dialects; a unified lexicon records the membership of each word.

	Parameters
	----------
	entries : dict
		Word → list of pronunciations, each a sequence of phones.

	dialect_tag : str
		`LT`, `CT` or `UNIFIED`.

	memberships : dict
		Word → Membership, required for unified lexicons only.

	inventory : PhoneInventory
		If given, every phone is checked against it.

	Raises
	------
	LexiconFormatError
		An empty pronunciation has been found.

	UnknownPhoneError
		A phone is not in the inventory.
	'''

	def __init__(self, entries = None, *, dialect_tag = DialectLabel.LT, memberships = None, inventory = None):
		self._dialect_tag = UNIFIED if dialect_tag == UNIFIED else DialectLabel(dialect_tag)
		self._entries = {}
		self._memberships = {}

		for word, prons in (entries or {}).items():
			for pron in prons:
				self._add(word, pron)

		for word in self._entries:
			if self._dialect_tag == UNIFIED:
				self._memberships[word] = Membership((memberships or {}).get(word, Membership.BOTH))

			else:
				self._memberships[word] = Membership(self._dialect_tag.value)

		if inventory is not None:
			self.validate(inventory)

	def _add(self, word, pron):
		'''
		Add a pronunciation, ignoring exact duplicates.
		'''

		pron = tuple(pron)

		if not(pron):
			raise LexiconFormatError(None, None, f'empty pronunciation for `{word}`')

		prons = self._entries.setdefault(word, [])
		if not(pron in prons):
			prons.append(pron)

	def __len__(self):
		return len(self._entries)

	def __contains__(self, word):
		return word in self._entries

	def __iter__(self):
		return iter(self._entries)

	def __eq__(self, other):
		return isinstance(other, Lexicon) and self._dialect_tag == other._dialect_tag and self._entries == other._entries and self._memberships == other._memberships

	@property
	def dialect_tag(self):
		return self._dialect_tag

	@property
	def words(self):
		'''
		The vocabulary, sorted.

		Returns
		-------
		words : list
			The words.
		'''

		return sorted(self._entries)

	def pronunciations(self, word):
		'''
		Get the pronunciations of a word.

		Raises
		------
		KeyError
			The word is not in the lexicon.

		Returns
		-------
		prons : list
			List of phone tuples, the first one being the canonical pronunciation.
		'''

		return list(self._entries[word])

	def membership(self, word):
		'''
		Dialect membership of a word.

		Raises
		------
		KeyError
			The word is not in the lexicon.

		Returns
		-------
		membership : Membership
			LT, CT or BOTH.
		'''

		return self._memberships[word]

	def phones(self):
		'''
		Set of phones used by the lexicon.
		'''

		return {p for prons in self._entries.values() for pron in prons for p in pron}

	def validate(self, inventory):
		'''
		Check every phone belongs to an inventory.

		Raises
		------
		UnknownPhoneError
			A phone is unknown.
		'''

		for word in self.words:
			for pron in self._entries[word]:
				inventory.check(pron, word)

	def save(self, filename):
		'''
		Write the lexicon: `word<TAB>phone phone ...`, one pronunciation per line.
		Unified lexicons get a third column with the membership of the word.

		Parameters
		----------
		filename : str
			Path to the file.
		'''

		with AtomicFile(filename, 'w') as f:
			for word in self.words:
				for pron in self._entries[word]:
					columns = [word, ' '.join(pron)]

					if self._dialect_tag == UNIFIED:
						columns.append(self._memberships[word].value)

					f.write('\t'.join(columns) + '\n')

	@classmethod
	def load(cls, filename, dialect_tag, *, inventory = None):
		'''
		Read a lexicon file. A repeated word is an alternative pronunciation.

		Parameters
		----------
		filename : str
			Path to the file.

		dialect_tag : str
			`LT`, `CT` or `UNIFIED`.

		inventory : PhoneInventory
			If given, every phone is checked against it.

		Raises
		------
		LexiconFormatError
			A line is malformed.

		Returns
		-------
		lexicon : Lexicon
			The loaded lexicon.
		'''

		entries = {}
		memberships = {}

		with open(filename, 'r', encoding = 'utf-8') as f:
			for line_number, line in enumerate(f, start = 1):
				line = line.rstrip('\n')

				if not(line.strip()) or line.startswith('#'):
					continue

				columns = line.split('\t')

				if len(columns) < 2 or len(columns) > 3:
					raise LexiconFormatError(filename, line_number, 'expected `word<TAB>phones`')

				word, pron = columns[0].strip(), columns[1].split()

				if not(word) or not(pron):
					raise LexiconFormatError(filename, line_number, 'empty word or pronunciation')

				entries.setdefault(word, []).append(pron)

				if len(columns) == 3:
					try:
						memberships[word] = Membership(columns[2].strip())

					except ValueError:
						raise LexiconFormatError(filename, line_number, f'unknown membership `{columns[2]}`')

		return cls(entries, dialect_tag = dialect_tag, memberships = memberships, inventory = inventory)

def mergeLexicons(lt, ct, *, inventory = None):
	'''
	Combine an LT and a CT lexicon into a unified one.
	The vocabulary is the union; words of both lexicons are marked `BOTH` and keep all their pronunciations, without duplicates.

	Parameters
	----------
	lt : Lexicon
		The LT lexicon.

	ct : Lexicon
		The CT lexicon.

	inventory : PhoneInventory
		If given, every phone is checked against it.

	Raises
	------
	UnknownPhoneError
		A phone is not in the inventory.

	Returns
	-------
	unified : Lexicon
		The unified lexicon.
	'''

	entries = {}
	dialects = {}

	for lexicon, dialect in [(lt, DialectLabel.LT), (ct, DialectLabel.CT)]:
		if inventory is not None:
			lexicon.validate(inventory)

		for word in lexicon.words:
			entries.setdefault(word, []).extend(lexicon.pronunciations(word))
			dialects.setdefault(word, set()).add(dialect)

	memberships = {word: Membership.fromDialects(ds) for word, ds in dialects.items()}

	return Lexicon(entries, dialect_tag = UNIFIED, memberships = memberships)
