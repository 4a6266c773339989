#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dialectid.corpus import DialectLabel, Lexicon, Membership, ParallelDictionary, PhoneInventory, mergeLexicons, MANUAL, RULE
from dialectid.did import *
from dialectid.featext import FeatureMatrix
from dialectid.gmm import GmmModel
from dialectid.hmm import HmmSet, PhoneHmm, transitionMatrix
from dialectid.utils import Events

LT = DialectLabel.LT
CT = DialectLabel.CT

def phone(name, means):
	return PhoneHmm(name, transitionMatrix([0.5, 0.5, 0.5]), [GmmModel([1.0], [[m]], [[0.25]]) for m in means])

MEANS = {'a': [-2.0, -1.0, 0.0], 'n': [1.0, 2.0, 3.0], 'A~': [5.0, 6.0, 7.0]}

def phoneSet(phones, inventory = None):
	return HmmSet({p: phone(p, MEANS[p]) for p in phones}, inventory or PhoneInventory(phones))

def utterance(*phones, repeat = 3):
	'''
	Frames sitting on the state means of a phone sequence.
	'''

	return FeatureMatrix(np.repeat(np.concatenate([MEANS[p] for p in phones]), repeat)[:, np.newaxis])

class RecordingIdentifier(Identifier):
	method = 'plvcsr'

	def __init__(self, label):
		self.label = label
		self.calls = 0

	def identify(self, feat):
		self.calls += 1
		return Decision(self.label, self.method, {LT: -1.0, CT: -0.5})

@pytest.fixture
def lexicons():
	return {LT: Lexicon({'an': [['a', 'n']], 'enna': [['a']]}, dialect_tag = LT), CT: Lexicon({'na': [['n', 'a']], 'enna': [['a']], 'nan': [['n', 'a', 'n']]}, dialect_tag = CT)}

@pytest.fixture
def unified_lexicon(lexicons):
	return mergeLexicons(lexicons[LT], lexicons[CT])

@pytest.fixture
def upr_system():
	lexicons = {LT: Lexicon({'an': [['a', 'n']]}, dialect_tag = LT), CT: Lexicon({'na': [['n', 'a']]}, dialect_tag = CT)}
	return (phoneSet(['a', 'n']), mergeLexicons(lexicons[LT], lexicons[CT])), lexicons

# bias

@pytest.mark.parametrize('labels, verdict', [
	(['LT', 'LT', 'LT', 'CT', 'LT'], Verdict.LT),
	(['CT', 'LT', 'CT', 'CT'], Verdict.CT),
	(['LT', 'CT', 'CT', 'LT'], Verdict.EQUIPROBABLE),
	([], Verdict.EQUIPROBABLE)
])
def test_bias_verdicts(labels, verdict):
	bias = biasFromLabels([Membership(l) for l in labels])

	assert bias.verdict == verdict
	assert bias.lt_count + bias.ct_count + bias.excluded == len(labels)
	assert biasFromLabels([Membership(l) for l in reversed(labels)]).verdict == verdict

def test_bias_label():
	assert biasFromLabels([Membership.CT]).label == CT
	assert biasFromLabels([]).label is None
	assert not(biasFromLabels([]).decisive)

def test_common_words(lexicons):
	words = ['an', 'enna', 'enna', 'na']

	excluded = computeBias(words, lexicons)
	assert (excluded.lt_count, excluded.ct_count, excluded.excluded) == (1, 1, 2)

	counted = computeBias(words, lexicons, exclude_common = False)
	assert (counted.lt_count, counted.ct_count, counted.excluded) == (3, 3, 0)

	assert biasFromLabels([EXCLUDED, Membership.LT]).verdict == Verdict.LT

def test_word_membership(lexicons, unified_lexicon):
	assert wordMembership('an', lexicons) == Membership.LT
	assert wordMembership('enna', lexicons) == Membership.BOTH
	assert wordMembership('nan', {}, unified_lexicon) == Membership.CT

	with pytest.raises(UnknownWordError):
		computeBias(['zzz'], lexicons)

# nasalization

def test_nasal_relabel(inventory):
	assert applyNasalizationRelabel(['p', 'a', 'm'], inventory) == ['p', 'A~']
	assert applyNasalizationRelabel(['a', 'n', 't', 'i', 'm'], inventory) == ['a', 'n', 't', 'A~']
	assert applyNasalizationRelabel(['a', 'n', 't', 'i', 'm'], inventory, word_final_only = False) == ['A~', 't', 'A~']
	assert applyNasalizationRelabel(['m', 'a'], inventory) == ['m', 'a']
	assert relabelWords([['p', 'a', 'm'], ['k', 'a']], inventory) == [['p', 'A~'], ['k', 'a']]

	assert applyNasalizationRelabel(['p', 'a', 'm'], PhoneInventory(['p', 'a', 'm'], vowels = ['a'], nasals = ['m'])) == ['p', 'a', 'm']

def test_nasal_relabel_is_idempotent(inventory, rng):
	phones = list(inventory)

	for _ in range(200):
		sequence = [str(p) for p in rng.choice(phones, size = rng.integers(1, 8))]

		for final in [True, False]:
			once = applyNasalizationRelabel(sequence, inventory, word_final_only = final)
			assert applyNasalizationRelabel(once, inventory, word_final_only = final) == once

def test_remove_nasalization(inventory):
	assert removeNasalization(['p', 'A~'], inventory) == ['p', 'a', 'ng']
	assert removeNasalization(['A~', 't'], inventory, ['aa', 'n']) == ['aa', 'n', 't']
	assert removeNasalization(['p', 'a'], PhoneInventory(['p', 'a'])) == ['p', 'a']

# reconfirmation

def segmentOf(word, *phones):
	feat = utterance(*phones)
	return WordSegment(word, 0, len(feat), feat.frames)

def test_reconfirm_flips_to_parallel(unified_lexicon):
	pdict = ParallelDictionary(overrides = {LT: {'an': 'na'}, CT: {'na': 'an'}})
	hmmset = phoneSet(['a', 'n'])

	label = reconfirmWord(segmentOf('an', 'n', 'a'), Membership.LT, pdict, hmmset, unified_lexicon)
	assert label == Membership.CT

	label = reconfirmWord(segmentOf('an', 'a', 'n'), Membership.LT, pdict, hmmset, unified_lexicon)
	assert label == Membership.LT

def test_reconfirm_identical_parallel_is_excluded(unified_lexicon):
	pdict = ParallelDictionary(rule_entries = {LT: {'enna': 'enna'}})

	assert reconfirmWord(segmentOf('enna', 'a'), Membership.BOTH, pdict, phoneSet(['a', 'n']), unified_lexicon) == EXCLUDED

def test_reconfirm_keeps_dialect_when_parallel_does_not_fit(unified_lexicon):
	pdict = ParallelDictionary(overrides = {LT: {'an': 'nan'}})
	feat = utterance('a', 'n', repeat = 1)
	seg = WordSegment('an', 0, 6, feat.frames)

	assert reconfirmWord(seg, Membership.LT, pdict, phoneSet(['a', 'n']), unified_lexicon) == Membership.LT

def test_reconfirm_without_parallel(unified_lexicon, caplog):
	with caplog.at_level('INFO'):
		label = reconfirmWord(segmentOf('an', 'n', 'a'), Membership.LT, ParallelDictionary(), phoneSet(['a', 'n']), unified_lexicon)

	assert label == Membership.LT
	assert 'no parallel word' in caplog.text

def test_reconfirm_keeps_dialect_when_parallel_has_no_model(unified_lexicon, caplog):
	pdict = ParallelDictionary(overrides = {LT: {'an': 'anu'}})
	inventory = PhoneInventory(['a', 'n', 'u'], vowels = ['a', 'u'], nasals = ['n'])

	with caplog.at_level('WARNING'):
		label = reconfirmWord(segmentOf('an', 'a', 'n'), Membership.LT, pdict, phoneSet(['a', 'n']), unified_lexicon, inventory = inventory)

	assert label == Membership.LT
	assert 'cannot be aligned' in caplog.text

def test_reconfirm_identical_parallel_retained(unified_lexicon):
	pdict = ParallelDictionary(rule_entries = {LT: {'enna': 'enna'}})
	seg = segmentOf('enna', 'a')

	assert reconfirmWord(seg, Membership.BOTH, pdict, phoneSet(['a', 'n']), unified_lexicon, same_parallel = RETAIN) == Membership.BOTH
	assert reconfirmWord(seg, Membership.BOTH, pdict, phoneSet(['a', 'n']), unified_lexicon, same_parallel = EXCLUDE) == EXCLUDED

def test_override_precedence():
	pdict = ParallelDictionary(rule_entries = {LT: {'an': 'ann', 'enna': 'enna'}}, overrides = {LT: {'an': 'na'}})

	assert pdict.lookup('an', LT) == 'na'
	assert pdict.kind('an', LT) == MANUAL
	assert pdict.kind('enna', LT) == RULE
	assert pdict.lookup('na', CT) is None
	assert pdict.lt_to_ct == {'an': 'na', 'enna': 'enna'}

# identifiers

def test_ppr_versions():
	inventory = PhoneInventory(['a', 'n', 'A~'], vowels = ['a'], nasals = ['n'], nasalized = ['A~'])
	lt = (phoneSet(['a', 'n']), None)
	ct = (phoneSet(['a', 'n', 'A~'], inventory), None)

	with pytest.raises(MissingLanguageModelError):
		PprIdentifier(lt, ct, PprVersion.V1)

	with pytest.raises(MissingNasalizedModelError):
		PprIdentifier(lt, (phoneSet(['a', 'n']), None), PprVersion.V3)

	system = PprIdentifier(lt, ct, PprVersion.V3)
	assert system.method == 'ppr-v3'

	feat = utterance('a', 'A~', 'n')
	decision = system.identify(feat)

	assert decision.label == CT
	assert decision.scores[CT] > decision.scores[LT]
	assert 'A~' in decision.details['phones']['CT']

	normalized = PprIdentifier(lt, ct, 'V3', duration_normalize = True).identify(feat)
	assert normalized.scores[CT] == pytest.approx(decision.scores[CT] / len(feat))

def test_plvcsr(upr_system):
	(hmmset, _), lexicons = upr_system
	system = PlvcsrIdentifier((hmmset, lexicons[LT]), (hmmset, lexicons[CT]))

	decision = system.identify(utterance('n', 'a', 'n', 'a'))

	assert decision.label == CT
	assert decision.details['words']['CT'] == ['na', 'na']
	assert plvcsrIdentify((hmmset, lexicons[LT]), (hmmset, lexicons[CT]), utterance('a', 'n')).label == LT

def test_identical_systems_tie_to_lt(upr_system):
	inventory = PhoneInventory(['a', 'n', 'A~'], vowels = ['a'], nasals = ['n'], nasalized = ['A~'])
	phones = (phoneSet(['a', 'n', 'A~'], inventory), None)
	(hmmset, _), lexicons = upr_system

	ppr = PprIdentifier(phones, phones, PprVersion.V3).identify(utterance('a', 'A~', 'n'))
	plvcsr = PlvcsrIdentifier((hmmset, lexicons[CT]), (hmmset, lexicons[CT])).identify(utterance('n', 'a'))

	for decision in [ppr, plvcsr]:
		assert decision.scores[LT] == decision.scores[CT]
		assert decision.label == LT

def test_upr1_decisive_never_falls_back(upr_system):
	unified, lexicons = upr_system
	fallback = RecordingIdentifier(CT)

	decision = Upr1Identifier(unified, lexicons, fallback).identify(utterance('a', 'n', 'a', 'n', 'n', 'a'))

	assert decision.label == LT
	assert decision.scores == {LT: 2, CT: 1}
	assert not(decision.fallback_used)
	assert fallback.calls == 0
	assert decision.details['words'] == ['an', 'an', 'na']

def test_upr1_equiprobable(upr_system):
	unified, lexicons = upr_system
	fallback = RecordingIdentifier(CT)
	feat = utterance('a', 'n', 'n', 'a')

	decision = upr1Identify(unified, lexicons, fallback, feat)

	assert decision.label == CT
	assert decision.fallback_used
	assert decision.scores == fallback.identify(feat).scores
	assert decision.method == 'upr1'

	standalone = Upr1Identifier(unified, lexicons, accounting = STANDALONE).identify(feat)
	assert standalone.label is None
	assert not(standalone.fallback_used)

	with pytest.raises(ValueError):
		Upr1Identifier(unified, lexicons)

def test_upr2_with_empty_dictionary_is_upr1(upr_system):
	unified, lexicons = upr_system

	for phones in [('a', 'n', 'a', 'n', 'n', 'a'), ('n', 'a'), ('a', 'n', 'n', 'a')]:
		feat = utterance(*phones)
		upr1 = Upr1Identifier(unified, lexicons, accounting = STANDALONE).identify(feat)
		upr2 = Upr2Identifier(unified, lexicons, ParallelDictionary(), accounting = STANDALONE).identify(feat)

		assert upr2.label == upr1.label
		assert upr2.scores == upr1.scores

def test_upr2_all_excluded_falls_back(upr_system):
	unified, lexicons = upr_system
	pdict = ParallelDictionary(overrides = {LT: {'an': 'an'}, CT: {'na': 'na'}})
	fallback = RecordingIdentifier(LT)

	decision = upr2Identify(unified, lexicons, pdict, fallback, utterance('a', 'n', 'n', 'a', 'a', 'n'))

	assert decision.details['labels'] == [EXCLUDED] * 3
	assert decision.fallback_used
	assert decision.label == LT
	assert fallback.calls == 1

def test_upr2_retains_identical_parallels(upr_system):
	unified, lexicons = upr_system
	pdict = ParallelDictionary(overrides = {LT: {'an': 'an'}, CT: {'na': 'na'}})
	fallback = RecordingIdentifier(CT)

	decision = Upr2Identifier(unified, lexicons, pdict, fallback, same_parallel = RETAIN).identify(utterance('a', 'n', 'n', 'a', 'a', 'n'))

	assert decision.details['labels'] == ['LT', 'CT', 'LT']
	assert decision.label == LT
	assert decision.scores == {LT: 2, CT: 1}
	assert fallback.calls == 0

	with pytest.raises(ValueError):
		Upr2Identifier(unified, lexicons, pdict, fallback, same_parallel = 'drop')

def test_upr_words_cover_utterance(upr_system):
	(hmmset, lexicon), _ = upr_system
	feat = utterance('a', 'n', 'n', 'a', 'a', 'n')

	from dialectid.decode import buildWordGraph

	words = uprRecognize(buildWordGraph(hmmset, lexicon), feat)

	assert [w.word for w in words] == ['an', 'na', 'an']
	assert words[0].start == 0 and words[-1].end == len(feat)
	assert all(a.end == b.start for a, b in zip(words, words[1:]))
	assert words[1].phones == ('n', 'a')
	assert words[1].features.num_frames == words[1].end - words[1].start

# decisions and evaluation

def decisionsFixture():
	return {
		'u1': Decision(LT, 'gmm', {LT: -10.0, CT: -12.5}),
		'u2': Decision(CT, 'gmm', {LT: -9.0, CT: -8.0}),
		'u3': Decision(None, 'gmm', {LT: 1, CT: 1}),
		'u4': RuntimeError('no surviving path\nat frame 3'),
		'u5': Decision(LT, 'gmm', {LT: -1.0, CT: -2.0}, True)
	}

TRUTH = {'u1': LT, 'u2': CT, 'u3': LT, 'u4': CT, 'u5': CT}

def test_decisions_file(tmp_path):
	filename = str(tmp_path / 'gmm.decisions')
	writeDecisions(decisionsFixture(), filename)

	lines = (tmp_path / 'gmm.decisions').read_text().splitlines()
	assert [l.split('\t')[0] for l in lines] == ['u1', 'u2', 'u3', 'u4', 'u5']
	assert lines[2].split('\t')[1] == 'NONE'
	assert lines[3] == 'u4\tERROR\tno surviving path at frame 3'

	read = readDecisions(filename)

	assert read['u1'].label == LT
	assert read['u1'].scores == {'LT': -10.0, 'CT': -12.5}
	assert read['u3'].label is None
	assert read['u4'] == 'no surviving path at frame 3'
	assert read['u5'].fallback_used

def test_decisions_format_errors(tmp_path):
	filename = tmp_path / 'bad.decisions'
	filename.write_text('u1\tLT\tgmm\n')

	with pytest.raises(DecisionsFormatError):
		readDecisions(str(filename))

	filename.write_text('u1\tXX\tgmm\t0\t{}\n')

	with pytest.raises(DecisionsFormatError):
		readDecisions(str(filename))

def test_evaluate_decisions():
	metrics = evaluateDecisions(decisionsFixture(), TRUTH)

	assert metrics.method == 'gmm'
	assert metrics.accuracy == pytest.approx(2 / 5)
	assert metrics.errors == 1
	assert metrics.undecided == 1
	assert_allclose(metrics.confusion, [[0.5, 0.5], [2 / 3, 1 / 3]])
	assert_allclose(metrics.confusion.sum(axis = 1), 1.0, atol = 1e-9)
	assert [row[0] for row in metrics.per_utterance] == ['u1', 'u2', 'u3', 'u4', 'u5']

def test_confusion_of_absent_dialect(caplog):
	with caplog.at_level('WARNING'):
		metrics = evaluateDecisions({'u1': Decision(LT, 'gmm'), 'u2': Decision(CT, 'gmm')}, {'u1': 'LT', 'u2': 'LT'})

	assert_allclose(metrics.confusion, [[0.5, 0.5], [0.0, 0.0]])
	assert metrics.accuracy == pytest.approx(0.5)
	assert 'no CT utterance' in caplog.text

def test_perfect_decisions_give_identity():
	decisions = {f'u{i}': Decision(d, 'cnn') for i, d in enumerate([LT, CT, CT, LT])}
	metrics = evaluateDecisions(decisions, {f'u{i}': d for i, d in enumerate([LT, CT, CT, LT])})

	assert metrics.accuracy == 1.0
	assert_allclose(metrics.confusion, np.eye(2))

def test_evaluation_errors():
	with pytest.raises(EmptyEvaluationError):
		evaluateDecisions({}, TRUTH)

	with pytest.raises(MissingTruthError):
		evaluateDecisions({'zz': Decision(LT, 'gmm')}, TRUTH)

def test_report_files(tmp_path):
	metrics = evaluateDecisions(decisionsFixture(), TRUTH)
	filename = str(tmp_path / 'gmm.json')
	metrics.save(filename)

	loaded = Metrics.load(filename)

	assert loaded.method == metrics.method
	assert loaded.accuracy == metrics.accuracy
	assert_allclose(loaded.confusion, metrics.confusion)
	assert loaded.per_utterance[3] == ('u4', CT, 'no surviving path at frame 3')
	assert loaded.per_utterance[2][2].label is None
	assert loaded.per_utterance[4][2].fallback_used

def test_summary_report():
	gmm = evaluateDecisions(decisionsFixture(), TRUTH)
	cnn = evaluateDecisions({'u1': Decision(LT, 'cnn')}, TRUTH)

	report = summaryReport([gmm, cnn])

	assert report.startswith('Identification accuracies')
	assert '40.00' in report and '100.00' in report
	assert report.index('gmm') < report.index('cnn')
	assert 'Confusions' in report

	assert gmm.summaryTable().startswith('gmm: accuracy 40.00% (5 utterances, 1 undecided, 1 errors)')

def test_identify_all_records_failures():
	class Failing(Identifier):
		method = 'gmm'

		def identify(self, feat):
			if feat is None:
				raise ValueError('broken utterance')

			return Decision(LT, self.method)

	seen = []
	events = Events(EVALUATION_EVENTS)
	events.addListener('utterance-identified', lambda utt_id, outcome: seen.append(utt_id))

	metrics = evaluate(Failing(), [('u1', 1), ('u2', None)], {'u1': LT, 'u2': LT}, events = events)

	assert seen == ['u1', 'u2']
	assert metrics.errors == 1
	assert metrics.accuracy == 0.5
	assert isinstance(metrics.per_utterance[1][2], ValueError)
