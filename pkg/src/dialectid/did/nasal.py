#!/usr/bin/env python3
# -*- coding: utf-8 -*-

def applyNasalizationRelabel(phones, inventory, *, word_final_only = True):
	'''
	Replace (vowel, nasal consonant) pairs by the grouped nasalized-vowel symbol, whatever the vowel.

	Parameters
	----------
	phones : sequence
		Pronunciation of a word.

	inventory : PhoneInventory
		Defines the vowel and nasal classes and the nasalized symbol.

	word_final_only : bool
		`True` to only relabel the pair ending the word, `False` to relabel every pair.

	Returns
	-------
	phones : list
		The relabeled pronunciation (unchanged if the inventory has no nasalized symbol).
	'''

	phones = list(phones)
	symbol = inventory.nasalized_symbol

	if symbol is None:
		return phones

	def isPair(i):
		return inventory.isVowel(phones[i]) and inventory.isNasal(phones[i+1])

	if word_final_only:
		if len(phones) >= 2 and isPair(len(phones) - 2):
			return phones[:-2] + [symbol]

		return phones

	out = []
	i = 0

	while i < len(phones):
		if i + 1 < len(phones) and isPair(i):
			out.append(symbol)
			i += 2

		else:
			out.append(phones[i])
			i += 1

	return out

def relabelWords(words, inventory, *, word_final_only = True):
	'''
	Relabel every word of a transcript given as a sequence of pronunciations.
	'''

	return [applyNasalizationRelabel(w, inventory, word_final_only = word_final_only) for w in words]

def removeNasalization(phones, inventory, expansion = None):
	'''
	Spell out the grouped nasalized vowel as a vowel + nasal consonant pair, for recognizers without it.

	Parameters
	----------
	phones : sequence
		Pronunciation of a word.

	inventory : PhoneInventory
		Defines the nasalized class.

	expansion : sequence
		Replacement pair, by default the first vowel and the first nasal consonant of the inventory.

	Returns
	-------
	phones : list
		The pronunciation, without nasalized phone.
	'''

	nasalized = set(inventory.nasalized_class)

	if not(nasalized):
		return list(phones)

	if expansion is None:
		expansion = [next(p for p in inventory if inventory.isVowel(p)), next(p for p in inventory if inventory.isNasal(p))]

	out = []

	for p in phones:
		if p in nasalized:
			out.extend(expansion)

		else:
			out.append(p)

	return out
