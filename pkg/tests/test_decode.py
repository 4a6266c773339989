#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import itertools

import numpy as np
import pytest

from dialectid.corpus import Lexicon, PhoneInventory, UnknownPhoneError
from dialectid.decode import *
from dialectid.gmm import GmmModel
from dialectid.hmm import HmmSet, PhoneHmm, forcedAlign, transitionMatrix

def phone(name, means, self_probs = (0.6, 0.5, 0.4)):
	return PhoneHmm(name, transitionMatrix(self_probs), [GmmModel([1.0], [[m]], [[1.0]]) for m in means])

@pytest.fixture
def hmmset():
	return HmmSet({'a': phone('a', [-2.0, -1.0, 0.0]), 'b': phone('b', [1.0, 2.0, 3.0], (0.3, 0.7, 0.5))}, PhoneInventory(['a', 'b']))

def bestSequenceScore(hmmset, frames, sequence, arc_weight, start_weight, end_weight):
	'''
	Best score of a fixed unit sequence, by enumeration of the frames where the path moves to the next state.
	'''

	models = [hmmset.resolve(u) for u in sequence]
	emissions = np.hstack([m.emissionLogliks(frames) for m in models])
	self_logprobs = np.concatenate([m.self_logprobs for m in models])

	next_logprobs = []
	for i, m in enumerate(models):
		chain = np.array(m.next_logprobs)
		if i + 1 < len(models):
			chain[-1] += arc_weight(sequence[i], sequence[i+1])

		next_logprobs.append(chain)

	next_logprobs = np.concatenate(next_logprobs)

	T, S = emissions.shape
	best = -np.inf

	for moves in itertools.combinations(range(1, T), S - 1):
		states = np.zeros(T, dtype = np.int64)
		for t in moves:
			states[t:] += 1

		score = emissions[0, 0]
		for t in range(1, T):
			score += (next_logprobs if states[t] != states[t-1] else self_logprobs)[states[t-1]] + emissions[t, states[t]]

		best = max(best, score + next_logprobs[S-1])

	return best + start_weight(sequence[0]) + end_weight(sequence[-1])

# language model

def test_bigram_add_one():
	lm = estimateBigram([['a', 'b'], ['a']], PhoneInventory(['a', 'b']), k = 1.0)

	assert lm.vocabulary_size == 3
	assert lm.logProb('a', BOS) == pytest.approx(np.log(0.6))
	assert lm.logProb('b', 'a') == pytest.approx(np.log(0.4))
	assert lm.logProb(EOS, 'a') == pytest.approx(np.log(0.4))
	assert lm.logProb('a', 'a') == pytest.approx(np.log(0.2))

	for history in [BOS, 'a', 'b']:
		assert sum(np.exp(p) for p in lm.historyLogProbs(history).values()) == pytest.approx(1.0)

	assert lm.smoothing == {'method': 'add-k', 'k': 1.0}

def test_bigram_unseen_history_is_uniform():
	lm = estimateBigram([['a']], PhoneInventory(['a', 'b', 'c']), k = 0.0)

	assert lm.logProb('a', BOS) == 0.0
	assert lm.logProb('b', 'c') == pytest.approx(-np.log(4))

	with np.errstate(divide = 'ignore'):
		assert lm.logProb('b', BOS) == -np.inf

def test_bigram_errors():
	with pytest.raises(EmptyTranscriptsError):
		estimateBigram([], PhoneInventory(['a']))

	with pytest.raises(UnknownPhoneError):
		estimateBigram([['a', 'z']], PhoneInventory(['a']))

	with pytest.raises(ValueError):
		PhoneLM(PhoneInventory(['a']), np.zeros((3, 3)))

def test_bigram_files(tmp_path):
	lm = estimateBigram([['a', 'b', 'b'], ['b']], PhoneInventory(['a', 'b']), k = 0.5)
	filename = str(tmp_path / 'lm.json')
	lm.save(filename)

	loaded = PhoneLM.load(filename)

	assert loaded.k == 0.5
	assert loaded.bigram == pytest.approx(lm.bigram)

# graphs

def test_phone_loop(hmmset):
	lm = estimateBigram([['a', 'b'], ['b']], hmmset.inventory)
	graph = buildPhoneLoop(hmmset, lm)

	assert graph.kind == GraphKind.PHONE_LOOP
	assert len(graph.nodes) == 2
	assert len(graph.arcs) == 4
	assert graph.arcWeight(0, 1) == pytest.approx(lm.logProb('b', 'a'))
	assert graph.starts[1] == pytest.approx(lm.logProb('b', BOS))
	assert graph.ends[0] == pytest.approx(lm.logProb(EOS, 'a'))

	graph.checkConnectivity()

	plain = buildPhoneLoop(hmmset)
	assert all(arc.weight == 0.0 for arc in plain.arcs)

def test_word_loop(hmmset):
	lexicon = Lexicon({'ab': [['a', 'b']], 'ba': [['b', 'a']], 'b': [['b']]})
	graph = buildWordGraph(hmmset, lexicon)

	assert graph.kind == GraphKind.WORD_LOOP
	assert len(graph.nodes) == 5
	assert [n.word for n in graph.nodes] == ['ab', 'ab', 'b', 'ba', 'ba']
	assert [n.position for n in graph.nodes] == [0, 1, 0, 0, 1]

	assert len(graph.arcs) == 2
	assert graph.loop.exits == {1: 0.0, 2: 0.0, 4: 0.0}
	assert graph.loop.entries == {0: 0.0, 2: 0.0, 3: 0.0}
	assert graph.arcWeight(4, 0) == 0.0
	assert graph.arcWeight(2, 2) == 0.0
	assert graph.arcWeight(0, 3) is None

	graph.checkConnectivity()

def test_word_loop_is_linear_in_the_vocabulary(hmmset):
	words = {''.join(w): [list(w)] for w in itertools.product('ab', repeat = 9)}
	graph = buildWordGraph(hmmset, Lexicon(dict(itertools.islice(words.items(), 300))))

	assert len(graph.arcs) == 300 * 8
	assert len(graph.loop.exits) == len(graph.loop.entries) == 300
	assert len(graph.compiled.edge_src) == 5 * len(graph.nodes) + 300 * 8 + 300

def test_word_loop_with_triphones(hmmset):
	graph = buildWordGraph(hmmset, Lexicon({'ab': [['a', 'b']]}), triphones = True)

	assert [n.unit for n in graph.nodes] == ['sil-a+b', 'a-b+sil']
	assert [m.name for m in graph.models] == ['a', 'b']

def test_graph_errors(hmmset):
	with pytest.raises(EmptyGraphError):
		buildWordGraph(hmmset, Lexicon({}))

	graph = DecodingGraph(hmmset, [GraphNode('a', 'a', 'a'), GraphNode('b', 'b', 'b')], [], {0: 0.0}, {0: 0.0}, GraphKind.LINEAR)

	with pytest.raises(GraphConnectivityError) as info:
		graph.checkConnectivity()

	assert info.value.nodes == [1]

# decoding

@pytest.mark.parametrize('T', range(6, 9))
def test_phone_loop_decode_exhaustive(T, hmmset, rng):
	lm = estimateBigram([['a', 'b'], ['b'], ['b', 'a', 'a']], hmmset.inventory)
	graph = buildPhoneLoop(hmmset, lm)
	frames = rng.normal(0.5, 2.0, size = (T, 1))

	result = viterbiDecode(graph, frames)

	expected = max(
		bestSequenceScore(hmmset, frames, sequence, lambda a, b: lm.logProb(b, a), lambda p: lm.logProb(p, BOS), lambda p: lm.logProb(EOS, p))
		for n in range(1, T // 3 + 1)
		for sequence in itertools.product('ab', repeat = n)
	)

	assert result.total_loglik == pytest.approx(expected, abs = 1e-9)
	assert result.kind == PHONE
	assert sum(u.loglik for u in result.units) == pytest.approx(result.total_loglik, abs = 1e-9)

def test_word_loop_decode(hmmset):
	frames = np.repeat([-2.0, -1.0, 0.0, 1.0, 2.0, 3.0], 4)[:, np.newaxis]
	graph = buildWordGraph(hmmset, Lexicon({'ab': [['a', 'b']], 'ba': [['b', 'a']]}))

	result = viterbiDecode(graph, frames)

	assert result.kind == WORD
	assert result.symbols == ['ab']
	assert [p.symbol for p in result.phones] == ['a', 'b']
	assert result.units[0].start == 0 and result.units[0].end == 24
	assert result.phones[0].end == 12
	assert sum(u.loglik for u in result.units) == pytest.approx(result.total_loglik, abs = 1e-9)

	pruned = viterbiDecode(graph, frames, beam = 50.0)
	assert pruned.symbols == result.symbols
	assert pruned.total_loglik <= result.total_loglik + 1e-9

def test_repeated_word(hmmset):
	frames = np.tile(np.repeat([1.0, 2.0, 3.0], 3), 2)[:, np.newaxis]
	graph = buildWordGraph(hmmset, Lexicon({'b': [['b']], 'ab': [['a', 'b']]}))

	result = viterbiDecode(graph, frames)

	assert result.symbols == ['b', 'b']
	assert [(u.start, u.end) for u in result.units] == [(0, 9), (9, 18)]

def test_loop_back_matches_explicit_arcs(hmmset, rng):
	lexicon = Lexicon({'ab': [['a', 'b']], 'ba': [['b', 'a']], 'b': [['b']], 'aab': [['a', 'a', 'b']]})
	graph = buildWordGraph(hmmset, lexicon)

	explicit_arcs = list(graph.arcs) + [Arc(e, s) for e in graph.loop.exits for s in graph.loop.entries]
	explicit = DecodingGraph(hmmset, graph.nodes, explicit_arcs, graph.starts, graph.ends, GraphKind.WORD_LOOP)

	for _ in range(20):
		frames = rng.normal(0.5, 2.0, size = (rng.integers(6, 40), 1))

		looped = viterbiDecode(graph, frames)
		expected = viterbiDecode(explicit, frames)

		assert looped.total_loglik == pytest.approx(expected.total_loglik, abs = 1e-9)
		assert [(u.symbol, u.start, u.end) for u in looped.units] == [(u.symbol, u.start, u.end) for u in expected.units]
		assert sum(u.loglik for u in looped.units) == pytest.approx(looped.total_loglik, abs = 1e-9)

@pytest.mark.parametrize('T', range(6, 20))
def test_linear_graph_matches_forced_alignment(T, hmmset, rng):
	frames = rng.normal(0.5, 2.0, size = (T, 1))

	result = viterbiDecode(buildLinearGraph(hmmset, ['a', 'b']), frames)
	alignment = forcedAlign(hmmset, frames, ['a', 'b'])

	assert result.total_loglik == pytest.approx(alignment.total_loglik, abs = 1e-9)
	assert [(u.symbol, u.start, u.end) for u in result.units] == [(s.unit, s.start, s.end) for s in alignment.segments]
	assert [u.loglik for u in result.units] == pytest.approx([s.loglik for s in alignment.segments], abs = 1e-9)

def test_wide_beam_is_exact(hmmset, rng):
	lm = estimateBigram([['a', 'b'], ['b'], ['b', 'a', 'a']], hmmset.inventory)
	graphs = [buildPhoneLoop(hmmset, lm), buildWordGraph(hmmset, Lexicon({'ab': [['a', 'b']], 'ba': [['b', 'a']], 'b': [['b']]}))]

	for _ in range(50):
		frames = rng.normal(0.5, 2.0, size = (rng.integers(6, 60), 1))

		for graph in graphs:
			exact = viterbiDecode(graph, frames)
			pruned = viterbiDecode(graph, frames, beam = 1e6)

			assert pruned.total_loglik == exact.total_loglik
			assert pruned.units == exact.units

def test_language_model_weights_add_up(hmmset, rng):
	lm = estimateBigram([['a', 'b'], ['b'], ['b', 'a', 'a']], hmmset.inventory)
	graph = buildPhoneLoop(hmmset, lm)

	for _ in range(20):
		frames = rng.normal(0.5, 2.0, size = (rng.integers(6, 40), 1))

		result = viterbiDecode(graph, frames)
		sequence = result.symbols

		weights = lm.logProb(sequence[0], BOS) + sum(lm.logProb(b, a) for a, b in zip(sequence, sequence[1:])) + lm.logProb(EOS, sequence[-1])
		acoustic = forcedAlign(hmmset, frames, sequence).total_loglik

		assert result.total_loglik - acoustic == pytest.approx(weights, abs = 1e-9)

def test_linear_graph_too_short(hmmset):
	graph = buildLinearGraph(hmmset, ['a', 'b'])

	with pytest.raises(SearchFailureError) as info:
		viterbiDecode(graph, np.zeros((4, 1)))

	assert info.value.frame is None

def test_decode_lines():
	result = DecodeResult((DecodedUnit('ab', 0, 12, -3.0), DecodedUnit('b', 12, 20, -2.5)), -5.5, WORD)
	line = formatDecodeResult('utt1', result)

	assert line == 'utt1\t-5.5\tab:0:12 b:12:20'

	utt_id, parsed = parseDecodeResult(line)

	assert utt_id == 'utt1'
	assert parsed.symbols == ['ab', 'b']
	assert parsed.total_loglik == -5.5
	assert parsed.num_frames == 20

def test_decodes_file(tmp_path):
	results = {
		'utt2': DecodeResult((DecodedUnit('a', 0, 4, -1.0),), -1.0, PHONE),
		'utt1': DecodeResult((DecodedUnit('b', 0, 3, -2.0), DecodedUnit('a', 3, 9, -4.0)), -6.0, PHONE)
	}
	filename = str(tmp_path / 'ppr.decodes')

	writeDecodes(results, filename)

	assert open(filename).read().splitlines()[0].startswith('utt1\t')

	loaded = readDecodes(filename, PHONE)

	assert list(loaded) == ['utt1', 'utt2']
	assert loaded['utt1'].symbols == ['b', 'a']
	assert loaded['utt1'].kind == PHONE
	assert loaded['utt2'].total_loglik == -1.0

@pytest.mark.parametrize('line', ['utt1\t-1.0', 'utt1\tscore\tab:0:1', 'utt1\t-1.0\tab:0', 'utt1\t-1.0\tab:x:3'])
def test_parse_errors(line):
	with pytest.raises(DecodeFormatError):
		parseDecodeResult(line)
