#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import enum

from .errors import *
from ..utils import jsonfiles

INVENTORY_FORMAT = 'phone-inventory'
INVENTORY_VERSION = 1

class DialectLabel(str, enum.Enum):
	'''
	The two dialect classes.
	'''

	LT = 'LT'
	CT = 'CT'

	@classmethod
	def parse(cls, tag, line_number = None):
		'''
		Convert a tag into a label.

		Raises
		------
		UnknownDialectError
			The tag is neither LT nor CT.
		'''

		try:
			return cls(tag)

		except ValueError:
			raise UnknownDialectError(tag, line_number)

	@property
	def other(self):
		'''
		The opposite dialect.
		'''

		return DialectLabel.CT if self is DialectLabel.LT else DialectLabel.LT

class Membership(str, enum.Enum):
	'''
	Dialect membership of a phone or of a word of a unified lexicon.
	'''

	LT = 'LT'
	CT = 'CT'
	BOTH = 'BOTH'

	@classmethod
	def fromDialects(cls, dialects):
		'''
		Membership corresponding to a set of dialects.

		Parameters
		----------
		dialects : iterable
			Dialect labels (or tags).

		Returns
		-------
		membership : Membership
			`BOTH` if both dialects are present.
		'''

		dialects = {DialectLabel(d) for d in dialects}

		if dialects == {DialectLabel.LT, DialectLabel.CT}:
			return cls.BOTH

		if len(dialects) != 1:
			raise ValueError('empty dialect set')

		return cls(dialects.pop().value)

	def includes(self, dialect):
		'''
		Check whether a dialect is covered by this membership.
		'''

		return self is Membership.BOTH or self.value == DialectLabel(dialect).value

# Non-authoritative default: 12 vowels and 27 consonants shared by both dialects, plus the grouped nasalized vowel of CT.
DEFAULT_VOWELS = ['a', 'aa', 'i', 'ii', 'u', 'uu', 'e', 'ee', 'ai', 'o', 'oo', 'eu']
DEFAULT_CONSONANTS = ['k', 'g', 'ng', 'c', 'j', 'nj', 's', 'sh', 'tx', 'dx', 'nx', 't', 'd', 'dh', 'n', 'nn', 'p', 'b', 'm', 'y', 'r', 'rx', 'l', 'lx', 'w', 'zh', 'h']
DEFAULT_NASALS = ['ng', 'nj', 'nx', 'n', 'nn', 'm']
DEFAULT_NASALIZED = 'A~'

class PhoneInventory():
	'''
	The ordered set of phones shared by the systems, with the classes the nasalization rule needs.

	Parameters
	----------
	phones : list
		Phone symbols, in order.

	vowels : list
		Phones of the vowel class.

	nasals : list
		Phones of the nasal consonant class.

	nasalized : list
		Phones of the nasalized class (usually a single grouped symbol).

	membership : dict
		Dialect membership of each phone. Missing phones are shared (`BOTH`), except nasalized ones which belong to CT.

	Raises
	------
	InventoryError
		Duplicated symbols, classes referencing unknown phones, or nasalized phones outside CT.
	'''

	def __init__(self, phones, *, vowels = (), nasals = (), nasalized = (), membership = None):
		self._phones = tuple(phones)

		if len(set(self._phones)) != len(self._phones):
			duplicates = sorted({p for p in self._phones if self._phones.count(p) > 1})
			raise InventoryError(f'duplicated phone symbols: {", ".join(duplicates)}')

		if not(self._phones):
			raise InventoryError('empty phone inventory')

		self._index = {p: i for i, p in enumerate(self._phones)}

		self._vowels = frozenset(vowels)
		self._nasals = frozenset(nasals)
		self._nasalized = tuple(nasalized)

		for name, cls in [('vowels', self._vowels), ('nasals', self._nasals), ('nasalized', self._nasalized)]:
			unknown = sorted(set(cls) - set(self._phones))
			if unknown:
				raise InventoryError(f'{name} class references unknown phones: {", ".join(unknown)}')

		self._membership = {p: Membership.BOTH for p in self._phones}
		self._membership.update({p: Membership.CT for p in self._nasalized})
		self._membership.update({p: Membership(m) for p, m in (membership or {}).items()})

		for p in self._nasalized:
			if not(self._membership[p].includes(DialectLabel.CT)):
				raise InventoryError(f'nasalized phone `{p}` must belong to CT')

		self._max_symbol_length = max(len(p) for p in self._phones)

	@classmethod
	def default(cls):
		'''
		A plausible default inventory: 39 phones common to both dialects plus one grouped nasalized vowel unique to CT.
		This inventory is a configuration default, not an authoritative description of any language.

		Returns
		-------
		inventory : PhoneInventory
			The default inventory.
		'''

		return cls(DEFAULT_VOWELS + DEFAULT_CONSONANTS + [DEFAULT_NASALIZED], vowels = DEFAULT_VOWELS, nasals = DEFAULT_NASALS, nasalized = [DEFAULT_NASALIZED])

	def __len__(self):
		return len(self._phones)

	def __iter__(self):
		return iter(self._phones)

	def __contains__(self, phone):
		return phone in self._index

	def __eq__(self, other):
		return isinstance(other, PhoneInventory) and self.toDict() == other.toDict()

	@property
	def phones(self):
		'''
		The phone symbols, in order.

		Returns
		-------
		phones : tuple
			The symbols.
		'''

		return self._phones

	@property
	def vowels(self):
		return self._vowels

	@property
	def nasals(self):
		return self._nasals

	@property
	def nasalized_class(self):
		'''
		The phones of the nasalized class.

		Returns
		-------
		phones : tuple
			The nasalized phones.
		'''

		return self._nasalized

	@property
	def nasalized_symbol(self):
		'''
		The grouped nasalized-vowel symbol used by the relabeling rule, `None` if the inventory has none.
		'''

		return self._nasalized[0] if self._nasalized else None

	@property
	def dialect_membership(self):
		return dict(self._membership)

	def index(self, phone):
		'''
		Position of a phone in the inventory.

		Raises
		------
		UnknownPhoneError
			The phone is not in the inventory.
		'''

		try:
			return self._index[phone]

		except KeyError:
			raise UnknownPhoneError(phone)

	def isVowel(self, phone):
		return phone in self._vowels

	def isNasal(self, phone):
		return phone in self._nasals

	def isConsonant(self, phone):
		return phone in self._index and not(phone in self._vowels) and not(phone in self._nasalized)

	def dialectPhones(self, dialect):
		'''
		Phones used by a dialect.

		Parameters
		----------
		dialect : DialectLabel|str
			The dialect.

		Returns
		-------
		phones : list
			The phones whose membership includes the dialect, in inventory order.
		'''

		return [p for p in self._phones if self._membership[p].includes(dialect)]

	def restrict(self, phones):
		'''
		Sub-inventory keeping only some phones (in inventory order), with their classes and memberships.

		Parameters
		----------
		phones : iterable
			Phones to keep.

		Raises
		------
		UnknownPhoneError
			A phone is not in the inventory.

		Returns
		-------
		inventory : PhoneInventory
			The sub-inventory.
		'''

		keep = set(phones)
		self.check(keep)
		kept = [p for p in self._phones if p in keep]

		return PhoneInventory(kept, vowels = [p for p in kept if p in self._vowels], nasals = [p for p in kept if p in self._nasals], nasalized = [p for p in self._nasalized if p in keep], membership = {p: self._membership[p] for p in kept})

	def check(self, phones, context = None):
		'''
		Check all phones of a sequence belong to the inventory.

		Raises
		------
		UnknownPhoneError
			A phone is unknown.
		'''

		for p in phones:
			if not(p in self._index):
				raise UnknownPhoneError(p, context)

	def segment(self, spelling):
		'''
		Split a spelling into phones by greedy longest match (e.g. `paam` → `p aa m`).

		Parameters
		----------
		spelling : str
			The spelling, a concatenation of phone symbols.

		Raises
		------
		SpellingError
			Some part of the spelling matches no phone.

		Returns
		-------
		phones : list
			The phones.
		'''

		phones = []
		pos = 0

		while pos < len(spelling):
			for length in range(min(self._max_symbol_length, len(spelling) - pos), 0, -1):
				candidate = spelling[pos:pos+length]

				if candidate in self._index:
					phones.append(candidate)
					pos += length
					break

			else:
				raise SpellingError(spelling)

		if not(phones):
			raise SpellingError(spelling)

		return phones

	def toDict(self):
		'''
		Representation used by the JSON container.
		'''

		return {
			'phones': list(self._phones),
			'vowels': [p for p in self._phones if p in self._vowels],
			'nasals': [p for p in self._phones if p in self._nasals],
			'nasalized': list(self._nasalized),
			'membership': {p: m.value for p, m in self._membership.items()}
		}

	@classmethod
	def fromDict(cls, obj):
		return cls(obj['phones'], vowels = obj.get('vowels', []), nasals = obj.get('nasals', []), nasalized = obj.get('nasalized', []), membership = obj.get('membership'))

	def save(self, filename):
		jsonfiles.writeContainer(INVENTORY_FORMAT, INVENTORY_VERSION, self.toDict(), filename)

	@classmethod
	def load(cls, filename):
		'''
		Load an inventory saved with `save()`.

		Parameters
		----------
		filename : str
			Path to the JSON container.

		Returns
		-------
		inventory : PhoneInventory
			The loaded inventory.
		'''

		return cls.fromDict(jsonfiles.readContainer(INVENTORY_FORMAT, INVENTORY_VERSION, filename))
