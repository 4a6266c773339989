#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging

from .decision import EXCLUDED, Verdict, BiasResult, WordSegment
from .errors import *
from ..corpus.inventory import DialectLabel, Membership
from ..corpus.lexicon import UNIFIED
from ..corpus.pdict import pronounce
from ..corpus.errors import SpellingError
from ..decode import viterbiDecode, WORD
from ..hmm import forcedAlign, AlignmentInfeasibleError, UnknownUnitError, triphoneSequence

logger = logging.getLogger(__name__)

# handling of a recognized word identical to its parallel word
EXCLUDE = 'exclude'
RETAIN = 'retain'

def wordMembership(word, lexicons, unified = None):
	'''
	Dialect membership of a word: from the dialect lexicons first, then from the metadata of the unified lexicon.

	Parameters
	----------
	word : str
		The word.

	lexicons : dict
		DialectLabel → Lexicon.

	unified : Lexicon
		The unified lexicon.

	Raises
	------
	UnknownWordError
		The word is in no lexicon.

	Returns
	-------
	membership : Membership
		LT, CT or BOTH.
	'''

	dialects = {DialectLabel(d) for d, lexicon in (lexicons or {}).items() if word in lexicon}

	if dialects:
		return Membership.fromDialects(dialects)

	if unified is not None and word in unified:
		return unified.membership(word)

	raise UnknownWordError(word)

def biasFromLabels(labels, exclude_common = True):
	'''
	Count the dialect labels of words.

	Parameters
	----------
	labels : iterable
		Membership values (or `EXCLUDED`).

	exclude_common : bool
		`True` to leave words of both dialects out of the counts, `False` to count them for both.

	Returns
	-------
	bias : BiasResult
		The counts and the verdict (sign of the difference).
	'''

	lt = ct = excluded = 0

	for label in labels:
		if label == EXCLUDED:
			excluded += 1

		elif label == Membership.BOTH:
			if exclude_common:
				excluded += 1

			else:
				lt += 1
				ct += 1

		elif label == Membership.LT:
			lt += 1

		elif label == Membership.CT:
			ct += 1

		else:
			raise ValueError(f'unknown word label `{label}`')

	if lt > ct:
		verdict = Verdict.LT

	elif ct > lt:
		verdict = Verdict.CT

	else:
		verdict = Verdict.EQUIPROBABLE

	return BiasResult(lt, ct, excluded, verdict)

def computeBias(words, lexicons, exclude_common = True, *, unified = None):
	'''
	Bias of a recognized word sequence towards a dialect.

	Parameters
	----------
	words : list
		WordSegment instances (or bare words).

	lexicons : dict
		DialectLabel → Lexicon, used to find the membership of each word.

	exclude_common : bool
		See `biasFromLabels()`.

	unified : Lexicon
		Unified lexicon, used for words absent from the dialect lexicons.

	Raises
	------
	UnknownWordError
		A word has no membership.

	Returns
	-------
	bias : BiasResult
		The counts and the verdict.
	'''

	return biasFromLabels([wordMembership(getattr(w, 'word', w), lexicons, unified) for w in words], exclude_common)

def uprRecognize(graph, feat, *, beam = None):
	'''
	Unified recognition: one decode through the word loop of the unified lexicon.

	Parameters
	----------
	graph : DecodingGraph
		The unified word loop (see `buildWordGraph()`).

	feat : FeatureMatrix
		The utterance.

	beam : float|None
		Decoding beam.

	Raises
	------
	SearchFailureError
		The decode failed.

	Returns
	-------
	words : list
		WordSegment instances, contiguous over the utterance.
	'''

	result = viterbiDecode(graph, feat, beam)
	frames = getattr(feat, 'frames', feat)

	words = []
	for unit in result.units:
		phones = tuple(p.symbol for p in result.phones if unit.start <= p.start and p.end <= unit.end)
		features = feat.segment(unit.start, unit.end) if hasattr(feat, 'segment') else frames[unit.start:unit.end]
		words.append(WordSegment(unit.symbol, unit.start, unit.end, features, unit.loglik, phones))

	return words

def _alignmentUnits(phones, triphones):
	return triphoneSequence(phones) if triphones else list(phones)

def reconfirmWord(seg, recognized_dialect, pdict, unified, lexicon, *, inventory = None, triphones = False, same_parallel = EXCLUDE):
	'''
	Confirm the dialect of a recognized word against its parallel word.

	The parallel word is looked up in the dictionary. A word identical to its parallel is left out of the bias (`EXCLUDED`) or keeps its recognized dialect, depending on `same_parallel`. Otherwise both words are force-aligned on the segment and the one with the higher likelihood gives the dialect. The recognized dialect is kept when the word has no parallel, when no likelihood can be computed for one of the words (segment too short, phone without model), and on ties.

	Parameters
	----------
	seg : WordSegment
		The recognized word.

	recognized_dialect : Membership
		Membership of the recognized word.

	pdict : ParallelDictionary
		The parallel dictionary.

	unified : HmmSet
		Models of the unified recognizer.

	lexicon : Lexicon
		Unified lexicon, giving the pronunciations.

	inventory : PhoneInventory
		Used to pronounce parallel words absent from the lexicon (the inventory of `unified` by default).

	triphones : bool
		`True` if the models are triphones.

	same_parallel : str
		`exclude` to leave a word identical to its parallel out of the bias, `retain` to keep its recognized dialect.

	Returns
	-------
	label : Membership|str
		LT, CT, BOTH or `EXCLUDED`.
	'''

	recognized_dialect = Membership(recognized_dialect)
	inventory = inventory or unified.inventory

	sources = [DialectLabel.LT, DialectLabel.CT] if recognized_dialect == Membership.BOTH else [DialectLabel(recognized_dialect.value)]
	source, parallel = None, None

	for d in sources:
		parallel = pdict.lookup(seg.word, d)

		if parallel is not None:
			source = d
			break

	if parallel is None:
		logger.info('`%s` has no parallel word, keeping %s', seg.word, recognized_dialect.value)
		return recognized_dialect

	if parallel == seg.word:
		return EXCLUDED if same_parallel == EXCLUDE else recognized_dialect

	try:
		parallel_phones = pronounce(parallel, lexicon, inventory)

	except SpellingError:
		logger.warning('parallel word `%s` of `%s` cannot be pronounced, keeping %s', parallel, seg.word, recognized_dialect.value)
		return recognized_dialect

	recognized_phones = seg.phones or lexicon.pronunciations(seg.word)[0]

	try:
		recognized_score = forcedAlign(unified, seg.features, _alignmentUnits(recognized_phones, triphones)).total_loglik
		parallel_score = forcedAlign(unified, seg.features, _alignmentUnits(parallel_phones, triphones)).total_loglik

	except AlignmentInfeasibleError:
		return recognized_dialect

	except UnknownUnitError as e:
		logger.warning('`%s` or its parallel `%s` cannot be aligned (%s), keeping %s', seg.word, parallel, e, recognized_dialect.value)
		return recognized_dialect

	if parallel_score > recognized_score:
		return Membership(source.other.value)

	return recognized_dialect
