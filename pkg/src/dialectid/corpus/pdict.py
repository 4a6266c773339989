#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import logging
import re

from .errors import *
from .inventory import DialectLabel
from ..utils import AtomicFile

logger = logging.getLogger(__name__)

RULE = 'rule'
MANUAL = 'manual'

SECTION_HEADERS = {
	'# lt->ct': DialectLabel.LT,
	'# ct->lt': DialectLabel.CT
}

@dataclasses.dataclass(frozen = True)
class Rule():
	'''
	A conversion rule: a regex rewrite over the space-separated phones of a word.
	'''

	pattern: str
	replacement: str

	def apply(self, phones_string):
		return re.sub(self.pattern, self.replacement, phones_string)

def applyRules(rules, phones):
	'''
	Apply conversion rules to a pronunciation, left to right.

	Parameters
	----------
	rules : list
		The Rule instances, in application order.

	phones : sequence
		The pronunciation.

	Returns
	-------
	phones : list
		The converted pronunciation.
	'''

	s = ' '.join(phones)

	for rule in rules:
		s = rule.apply(s)

	return s.split()

def _alternation(symbols):
	return '|'.join(re.escape(s) for s in sorted(symbols, key = lambda s: (-len(s), s)))

def defaultRules(inventory):
	'''
	Default LT → CT conversion rules for an inventory:
		1. word-final vowel + nasal consonant → nasalized vowel (if the inventory has one),
		2. `zh` → `l`,
		3. consonant-final word → appended `u`.

	Parameters
	----------
	inventory : PhoneInventory
		The inventory defining the vowel, nasal and consonant classes.

	Returns
	-------
	rules : list
		The Rule instances.
	'''

	rules = []

	if inventory.nasalized_symbol is not None and inventory.vowels and inventory.nasals:
		rules.append(Rule(f'(^| )(?:{_alternation(inventory.vowels)}) (?:{_alternation(inventory.nasals)})$', f'\\g<1>{inventory.nasalized_symbol}'))

	if 'zh' in inventory and 'l' in inventory:
		rules.append(Rule(r'(?<!\S)zh(?!\S)', 'l'))

	consonants = [p for p in inventory if inventory.isConsonant(p)]

	if consonants and 'u' in inventory:
		rules.append(Rule(f'(^| )({_alternation(consonants)})$', r'\g<1>\g<2> u'))

	return rules

def loadRules(filename):
	'''
	Read a rule table: `pattern<TAB>replacement` per line, `#` lines being comments.

	Raises
	------
	DictionaryFormatError
		A line is malformed or a pattern is not a valid regex.

	Returns
	-------
	rules : list
		The Rule instances, in file order.
	'''

	rules = []

	with open(filename, 'r', encoding = 'utf-8') as f:
		for line_number, line in enumerate(f, start = 1):
			line = line.rstrip('\n')

			if not(line.strip()) or line.startswith('#'):
				continue

			columns = line.split('\t')

			if len(columns) != 2:
				raise DictionaryFormatError(filename, line_number, 'expected `pattern<TAB>replacement`')

			try:
				re.compile(columns[0])

			except re.error as e:
				raise DictionaryFormatError(filename, line_number, f'invalid pattern: {e}')

			rules.append(Rule(columns[0], columns[1]))

	return rules

def saveRules(rules, filename):
	with AtomicFile(filename, 'w') as f:
		for rule in rules:
			f.write(f'{rule.pattern}\t{rule.replacement}\n')

def loadManualTable(filename):
	'''
	Read a manual conversion table: `src<TAB>dst` per line.

	Raises
	------
	DictionaryFormatError
		A line is malformed.

	Returns
	-------
	pairs : list
		The (src, dst) pairs, in file order.
	'''

	pairs = []

	with open(filename, 'r', encoding = 'utf-8') as f:
		for line_number, line in enumerate(f, start = 1):
			line = line.rstrip('\n')

			if not(line.strip()) or line.startswith('#'):
				continue

			columns = [c.strip() for c in line.split('\t')]

			if len(columns) != 2 or not(all(columns)):
				raise DictionaryFormatError(filename, line_number, 'expected `src<TAB>dst`')

			pairs.append(tuple(columns))

	return pairs

def saveManualTable(pairs, filename):
	with AtomicFile(filename, 'w') as f:
		for src, dst in pairs:
			f.write(f'{src}\t{dst}\n')

class ParallelDictionary():
	'''
	LT ↔ CT word mappings. Rule-derived entries and manual overrides are stored apart, overrides winning at lookup time.

	Parameters
	----------
	rule_entries : dict
		Source dialect → {word: parallel word} derived by the conversion rules.

	overrides : dict
		Source dialect → {word: parallel word} set manually.
	'''

	def __init__(self, rule_entries = None, overrides = None):
		self._rule_entries = {d: {} for d in DialectLabel}
		self._overrides = {d: {} for d in DialectLabel}

		for target, source in [(self._rule_entries, rule_entries), (self._overrides, overrides)]:
			for dialect, entries in (source or {}).items():
				target[DialectLabel(dialect)].update(entries)

	def __len__(self):
		return sum(len(self.mapping(d)) for d in DialectLabel)

	def __eq__(self, other):
		return isinstance(other, ParallelDictionary) and self._rule_entries == other._rule_entries and self._overrides == other._overrides

	def mapping(self, source):
		'''
		Effective mapping from a dialect.

		Parameters
		----------
		source : DialectLabel
			Dialect of the source words.

		Returns
		-------
		mapping : dict
			Word → parallel word, overrides applied.
		'''

		source = DialectLabel(source)
		return {**self._rule_entries[source], **self._overrides[source]}

	@property
	def lt_to_ct(self):
		return self.mapping(DialectLabel.LT)

	@property
	def ct_to_lt(self):
		return self.mapping(DialectLabel.CT)

	@property
	def overrides(self):
		return {d: dict(entries) for d, entries in self._overrides.items()}

	def kind(self, word, source):
		'''
		Origin of an entry: `manual`, `rule`, or `None` if the word has no parallel.
		'''

		source = DialectLabel(source)

		if word in self._overrides[source]:
			return MANUAL

		if word in self._rule_entries[source]:
			return RULE

		return None

	def lookup(self, word, source):
		'''
		Parallel word of a word.

		Parameters
		----------
		word : str
			The word.

		source : DialectLabel
			Dialect of the word.

		Returns
		-------
		parallel : str|None
			The parallel word, `None` if there is none.
		'''

		source = DialectLabel(source)

		try:
			return self._overrides[source][word]

		except KeyError:
			return self._rule_entries[source].get(word)

	def save(self, filename):
		'''
		Write the dictionary: one `src<TAB>dst<TAB>kind` line per entry, under `# lt->ct` and `# ct->lt` headers.
		'''

		with AtomicFile(filename, 'w') as f:
			for header, dialect in SECTION_HEADERS.items():
				f.write(header + '\n')

				for word in sorted(self.mapping(dialect)):
					f.write(f'{word}\t{self.lookup(word, dialect)}\t{self.kind(word, dialect)}\n')

	@classmethod
	def load(cls, filename):
		'''
		Read a dictionary written by `save()`.

		Raises
		------
		DictionaryFormatError
			A line is malformed or lies outside any section.

		Returns
		-------
		pdict : ParallelDictionary
			The dictionary.
		'''

		rule_entries = {d: {} for d in DialectLabel}
		overrides = {d: {} for d in DialectLabel}
		section = None

		with open(filename, 'r', encoding = 'utf-8') as f:
			for line_number, line in enumerate(f, start = 1):
				line = line.rstrip('\n')

				if not(line.strip()):
					continue

				if line.startswith('#'):
					if line.strip() in SECTION_HEADERS:
						section = SECTION_HEADERS[line.strip()]

					continue

				if section is None:
					raise DictionaryFormatError(filename, line_number, 'entry outside of any `# lt->ct`/`# ct->lt` section')

				columns = line.split('\t')

				if len(columns) != 3 or not(columns[2] in [RULE, MANUAL]):
					raise DictionaryFormatError(filename, line_number, 'expected `src<TAB>dst<TAB>rule|manual`')

				target = overrides if columns[2] == MANUAL else rule_entries
				target[section][columns[0]] = columns[1]

		return cls(rule_entries, overrides)

def spell(phones):
	'''
	Spelling of a pronunciation absent from every lexicon: the concatenated phones.
	'''

	return ''.join(phones)

def pronounce(word, lexicon, inventory):
	'''
	Canonical pronunciation of a word: from the lexicon if it is known, from its spelling otherwise.

	Parameters
	----------
	word : str
		The word.

	lexicon : Lexicon
		Lexicon to look the word up in.

	inventory : PhoneInventory
		Inventory used to segment spellings.

	Raises
	------
	SpellingError
		The word is unknown and its spelling cannot be segmented.

	Returns
	-------
	phones : tuple
		The pronunciation.
	'''

	if word in lexicon:
		return lexicon.pronunciations(word)[0]

	return tuple(inventory.segment(word))

def _manualSource(src, dst, lt, ct):
	'''
	Dialect of the source word of a manual pair.
	'''

	in_lt, in_ct = src in lt, src in ct

	if in_lt and not(in_ct):
		return DialectLabel.LT

	if in_ct and not(in_lt):
		return DialectLabel.CT

	if not(in_lt) and not(in_ct):
		logger.warning('manual entry `%s` → `%s` references a word absent from both lexicons', src, dst)

	return DialectLabel.CT if (dst in lt and not(dst in ct)) else DialectLabel.LT

def buildParallelDictionary(rules, manual, lt, ct):
	'''
	Build the parallel dictionary.
	LT → CT entries come from the conversion rules applied to the canonical pronunciation of every LT word, the result being the CT word sharing this pronunciation (or its spelling if there is none).
	Manual pairs then override them, in both directions. CT → LT entries only come from the manual table.

	Parameters
	----------
	rules : list
		The conversion rules. No entry is derived from an empty table.

	manual : list
		The manual (src, dst) pairs. The direction of each pair is given by the lexicon containing `src`.

	lt : Lexicon
		The LT lexicon.

	ct : Lexicon
		The CT lexicon.

	Returns
	-------
	pdict : ParallelDictionary
		The dictionary.
	'''

	rule_entries = {DialectLabel.LT: {}}

	if rules:
		ct_words = {}
		for word in ct.words:
			for pron in ct.pronunciations(word):
				ct_words.setdefault(tuple(pron), word)

		for word in lt.words:
			converted = tuple(applyRules(rules, lt.pronunciations(word)[0]))
			rule_entries[DialectLabel.LT][word] = ct_words.get(converted, spell(converted))

	overrides = {d: {} for d in DialectLabel}

	for src, dst in manual:
		overrides[_manualSource(src, dst, lt, ct)][src] = dst

	logger.info('parallel dictionary: %d rule entries, %d manual entries', len(rule_entries[DialectLabel.LT]), sum(len(o) for o in overrides.values()))

	return ParallelDictionary(rule_entries, overrides)
