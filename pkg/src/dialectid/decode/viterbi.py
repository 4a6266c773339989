#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses

import numpy as np

from .errors import *
from .graph import GraphKind
from ..gmm.model import asFrames
from ..utils import AtomicFile

PHONE = 'phone'
WORD = 'word'

@dataclasses.dataclass(frozen = True)
class DecodedUnit():
	symbol: str
	start: int
	end: int
	loglik: float

@dataclasses.dataclass(frozen = True)
class DecodeResult():
	'''
	Best path of a decode: the units (words for word loops, phones otherwise) with their frames [start, end), and the phone-level segmentation.
	The log-likelihoods of the units sum to the total.
	'''

	units: tuple
	total_loglik: float
	kind: str
	phones: tuple = ()

	@property
	def symbols(self):
		return [u.symbol for u in self.units]

	@property
	def num_frames(self):
		return self.units[-1].end if self.units else 0

class CompiledGraph():
	'''
	State-level expansion of a DecodingGraph.
	Every state has its self-loop as first incoming edge; edges are grouped by destination.
	'''

	def __init__(self, graph):
		models = graph.models
		sizes = np.array([m.num_states for m in models])
		first = np.concatenate([[0], np.cumsum(sizes)[:-1]])
		last = first + sizes - 1
		S = int(sizes.sum())

		# emission columns: physical model and state of each graph state
		self.physical = {}
		columns = []
		for model in models:
			key = model.name
			if not(key in self.physical):
				self.physical[key] = model

			columns += [(key, s) for s in range(model.num_states)]

		self.columns = columns
		self.node_of_state = np.repeat(np.arange(len(models)), sizes)
		self.first_state = first
		self.last_state = last
		self.num_states = S

		src, dst, weight = [], [], []

		for i, model in enumerate(models):
			for s in range(model.num_states):
				src.append(first[i] + s)
				dst.append(first[i] + s)
				weight.append(model.self_logprobs[s])

			for s in range(model.num_states - 1):
				src.append(first[i] + s)
				dst.append(first[i] + s + 1)
				weight.append(model.next_logprobs[s])

		for arc in graph.arcs:
			src.append(last[arc.src])
			dst.append(first[arc.dst])
			weight.append(models[arc.src].next_logprobs[-1] + arc.weight)

		# the loop-back point is the virtual source S: its score at t is the best exit at t - 1
		self.has_loop = graph.loop is not None
		self.loop_exit_weight = np.full(S, -np.inf)

		if self.has_loop:
			exits = list(graph.loop.exits.items())
			self.loop_exit_states = np.array([last[node] for node, _ in exits], dtype = np.int64)
			self.loop_exit_weights = np.array([models[node].next_logprobs[-1] + w for node, w in exits])
			self.loop_exit_weight[self.loop_exit_states] = self.loop_exit_weights

			for node, w in graph.loop.entries.items():
				src.append(S)
				dst.append(first[node])
				weight.append(w)

		src = np.array(src, dtype = np.int64)
		dst = np.array(dst, dtype = np.int64)
		weight = np.array(weight, dtype = np.float64)

		# stable sort by destination keeps the self-loops first within each group
		order = np.argsort(dst, kind = 'stable')
		self.edge_src = src[order]
		self.edge_dst = dst[order]
		self.edge_weight = weight[order]
		self.edge_is_self = self.edge_src == self.edge_dst
		self.group_starts = np.searchsorted(self.edge_dst, np.arange(S))

		self.start_weights = np.full(S, -np.inf)
		for node, w in graph.starts.items():
			self.start_weights[first[node]] = w

		self.final_weights = np.full(S, -np.inf)
		for node, w in graph.ends.items():
			self.final_weights[last[node]] = models[node].next_logprobs[-1] + w

	def emissions(self, frames):
		'''
		T × S emission log-likelihoods, each physical model being evaluated once.
		'''

		per_model = {key: model.emissionLogliks(frames) for key, model in self.physical.items()}
		return np.stack([per_model[key][:, s] for key, s in self.columns], axis = 1)

def _bestEdges(cand, compiled):
	'''
	Best incoming edge of each state (the first one on ties) and its score.
	'''

	best = np.maximum.reduceat(cand, compiled.group_starts)
	hits = np.flatnonzero(cand == best[compiled.edge_dst])
	_, first_hit = np.unique(compiled.edge_dst[hits], return_index = True)

	return best, hits[first_hit]

def viterbiDecode(graph, feat, beam = None):
	'''
	Token-passing Viterbi search of the best path through a graph.

	Parameters
	----------
	graph : DecodingGraph
		The graph.

	feat : FeatureMatrix|ndarray
		The utterance.

	beam : float|None
		Tokens scoring more than `beam` below the best one of their frame are pruned. `None` for an exact search.

	Raises
	------
	GmmDimensionError
		Features and models dimensions differ.

	SearchFailureError
		No path survives.

	Returns
	-------
	result : DecodeResult
		The best path.
	'''

	compiled = graph.compiled
	frames = asFrames(feat)
	T = frames.shape[0]
	E = compiled.emissions(frames)

	backpointers = np.zeros((T, compiled.num_states), dtype = np.int64)
	loop_from = np.zeros(T, dtype = np.int64)
	loop_score = -np.inf
	delta = compiled.start_weights + E[0]

	for t in range(T):
		if t > 0:
			source = np.append(delta, loop_score) if compiled.has_loop else delta
			cand = source[compiled.edge_src] + compiled.edge_weight
			best, edges = _bestEdges(cand, compiled)
			backpointers[t] = edges
			delta = best + E[t]

		top = delta.max()

		if not(np.isfinite(top)):
			raise SearchFailureError(t, beam)

		if beam is not None:
			delta = np.where(delta >= top - beam, delta, -np.inf)

		if compiled.has_loop:
			exits = delta[compiled.loop_exit_states] + compiled.loop_exit_weights
			k = int(np.argmax(exits))
			loop_score = exits[k]
			loop_from[t] = compiled.loop_exit_states[k]

	final = delta + compiled.final_weights
	s = int(np.argmax(final))

	if not(np.isfinite(final[s])):
		raise SearchFailureError(None, beam)

	states = np.empty(T, dtype = np.int64)
	entered = np.zeros(T, dtype = bool)
	scores = np.empty(T)

	leaving = compiled.final_weights[s]

	for t in range(T - 1, -1, -1):
		states[t] = s
		scores[t] = E[t, s] + leaving

		if t > 0:
			edge = backpointers[t, s]
			entered[t] = not(compiled.edge_is_self[edge]) and s == compiled.first_state[compiled.node_of_state[s]]
			leaving = compiled.edge_weight[edge]
			s = int(compiled.edge_src[edge])

			if s == compiled.num_states:
				s = int(loop_from[t - 1])
				leaving += compiled.loop_exit_weight[s]

		else:
			entered[t] = True
			scores[t] += compiled.start_weights[s]

	return _segment(graph, compiled, states, entered, scores, float(final[states[-1]]))

def _segment(graph, compiled, states, entered, scores, total):
	nodes = compiled.node_of_state[states]
	starts = np.flatnonzero(entered)
	ends = np.append(starts[1:], len(states))

	phones = []
	word_spans = []

	for start, end in zip(starts, ends):
		node = graph.nodes[nodes[start]]
		phones.append(DecodedUnit(node.phone, int(start), int(end), float(np.sum(scores[start:end]))))

		if node.position == 0:
			word_spans.append([node.word, int(start), int(end)])

		else:
			word_spans[-1][2] = int(end)

	if graph.kind == GraphKind.WORD_LOOP:
		units = tuple(DecodedUnit(w, s, e, float(np.sum(scores[s:e]))) for w, s, e in word_spans)
		return DecodeResult(units, total, WORD, tuple(phones))

	return DecodeResult(tuple(phones), total, PHONE, tuple(phones))

def formatDecodeResult(utt_id, result):
	'''
	Decode output line: `utt_id<TAB>total_loglik<TAB>sym:start:end sym:start:end ...`.
	'''

	units = ' '.join(f'{u.symbol}:{u.start}:{u.end}' for u in result.units)
	return f'{utt_id}\t{result.total_loglik!r}\t{units}'

def parseDecodeResult(line, kind = WORD):
	'''
	Parse a decode output line. Unit log-likelihoods are not part of the format and are set to NaN.

	Raises
	------
	DecodeFormatError
		Malformed line.

	Returns
	-------
	utt_id : str
		The utterance.

	result : DecodeResult
		The decoded units.
	'''

	columns = line.rstrip('\n').split('\t')

	if len(columns) != 3:
		raise DecodeFormatError(line, 'expected 3 tab-separated columns')

	try:
		total = float(columns[1])
		units = []

		for token in columns[2].split():
			symbol, start, end = token.rsplit(':', 2)
			units.append(DecodedUnit(symbol, int(start), int(end), float('nan')))

	except ValueError:
		raise DecodeFormatError(line, 'malformed score or unit')

	return columns[0], DecodeResult(tuple(units), total, kind)

def writeDecodes(results, filename):
	'''
	Write the decode lines of several utterances, sorted by utterance id, atomically.

	Parameters
	----------
	results : dict
		Utterance id → DecodeResult.

	filename : str
		Path to the file.
	'''

	with AtomicFile(filename, 'w') as f:
		for utt_id in sorted(results):
			f.write(formatDecodeResult(utt_id, results[utt_id]) + '\n')

def readDecodes(filename, kind = WORD):
	'''
	Read a file written by `writeDecodes()`.

	Raises
	------
	DecodeFormatError
		Malformed line.

	Returns
	-------
	results : dict
		Utterance id → DecodeResult.
	'''

	results = {}

	with open(filename, 'r', encoding = 'utf-8') as f:
		for line in f:
			if line.strip():
				utt_id, result = parseDecodeResult(line, kind)
				results[utt_id] = result

	return results
