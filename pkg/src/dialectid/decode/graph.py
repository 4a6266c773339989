#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import enum
import functools

import numpy as np

from .errors import *
from .lm import BOS, EOS
from ..hmm.model import triphoneSequence

class GraphKind(str, enum.Enum):
	PHONE_LOOP = 'PHONE_LOOP'
	WORD_LOOP = 'WORD_LOOP'
	LINEAR = 'LINEAR'

@dataclasses.dataclass(frozen = True)
class GraphNode():
	'''
	A model instance of a graph.
	`unit` is the name resolved through the HMM set, `phone` the phone it stands for, `word` the word it belongs to (the phone itself in phone graphs) and `position` its rank in the word.
	'''

	unit: str
	phone: str
	word: str
	position: int = 0

@dataclasses.dataclass(frozen = True)
class Arc():
	src: int
	dst: int
	weight: float = 0.0

@dataclasses.dataclass(frozen = True)
class LoopBack():
	'''
	A shared loop-back point: the exit nodes all lead to it and it leads to all the entry nodes, the path from exit `i` to entry `j` weighing `exits[i] + entries[j]`.
	Stands for the `len(exits) × len(entries)` arcs it replaces.
	'''

	exits: dict
	entries: dict

class DecodingGraph():
	'''
	A graph of HMM instances with weighted arcs, an optional loop-back point, start and end weights.

	Parameters
	----------
	hmmset : HmmSet
		The models the nodes are resolved with.

	nodes : list
		The GraphNode instances.

	arcs : list
		The Arc instances between nodes.

	starts : dict
		Start node → log-weight.

	ends : dict
		End node → log-weight.

	kind : GraphKind
		Family of the graph.

	loop : LoopBack
		Loop-back point, if any.

	Raises
	------
	EmptyGraphError
		No node.

	UnknownUnitError
		A node resolves to no model.
	'''

	def __init__(self, hmmset, nodes, arcs, starts, ends, kind, loop = None):
		if not(nodes):
			raise EmptyGraphError()

		self._hmmset = hmmset
		self._nodes = tuple(nodes)
		self._arcs = tuple(arcs)
		self._starts = dict(starts)
		self._ends = dict(ends)
		self._kind = GraphKind(kind)
		self._loop = loop

		self._models = tuple(hmmset.resolve(node.unit) for node in self._nodes)

	@property
	def hmmset(self):
		return self._hmmset

	@property
	def nodes(self):
		return self._nodes

	@property
	def arcs(self):
		return self._arcs

	@property
	def starts(self):
		return dict(self._starts)

	@property
	def ends(self):
		return dict(self._ends)

	@property
	def kind(self):
		return self._kind

	@property
	def models(self):
		return self._models

	@property
	def loop(self):
		return self._loop

	def arcWeight(self, src, dst):
		'''
		Weight of the transition between two nodes, through an arc or the loop-back point, `None` if there is none.
		'''

		weight = self._arc_weights.get((src, dst))

		if weight is None and self._loop is not None and src in self._loop.exits and dst in self._loop.entries:
			weight = self._loop.exits[src] + self._loop.entries[dst]

		return weight

	@functools.cached_property
	def _arc_weights(self):
		return {(a.src, a.dst): a.weight for a in self._arcs}

	def checkConnectivity(self):
		'''
		Check every node is reachable from a start node and can reach an end node.

		Raises
		------
		GraphConnectivityError
			Some nodes are not on a complete path.
		'''

		successors = {i: [] for i in range(len(self._nodes))}
		predecessors = {i: [] for i in range(len(self._nodes))}

		for arc in self._arcs:
			successors[arc.src].append(arc.dst)
			predecessors[arc.dst].append(arc.src)

		# the loop-back point is the extra vertex -1
		if self._loop is not None:
			successors[-1] = list(self._loop.entries)
			predecessors[-1] = list(self._loop.exits)

			for i in self._loop.exits:
				successors[i].append(-1)

			for j in self._loop.entries:
				predecessors[j].append(-1)

		def closure(seeds, neighbours):
			seen = set(seeds)
			stack = list(seeds)

			while stack:
				for j in neighbours[stack.pop()]:
					if not(j in seen):
						seen.add(j)
						stack.append(j)

			return seen

		forward = closure(self._starts, successors)
		backward = closure(self._ends, predecessors)

		bad = sorted(set(range(len(self._nodes))) - (forward & backward))

		if bad:
			raise GraphConnectivityError(bad)

	@functools.cached_property
	def compiled(self):
		'''
		State-level form of the graph used by the decoder (built once).
		'''

		from .viterbi import CompiledGraph

		return CompiledGraph(self)

def buildPhoneLoop(hmmset, lm = None, *, phones = None):
	'''
	Free phone loop: every phone can follow every phone.

	Parameters
	----------
	hmmset : HmmSet
		The phone models.

	lm : PhoneLM
		If given, the arc a → b weighs log P(b | a), entering with b weighs log P(b | <s>) and leaving after a weighs log P(</s> | a). All weights are 0 otherwise.

	phones : list
		Phones of the loop, the inventory of the set by default.

	Returns
	-------
	graph : DecodingGraph
		The PHONE_LOOP graph.
	'''

	phones = list(phones if phones is not None else hmmset.inventory)
	nodes = [GraphNode(p, p, p) for p in phones]

	def weight(symbol, history):
		return 0.0 if lm is None else lm.logProb(symbol, history)

	arcs = [Arc(i, j, weight(b, a)) for i, a in enumerate(phones) for j, b in enumerate(phones)]
	starts = {i: weight(p, BOS) for i, p in enumerate(phones)}
	ends = {i: weight(EOS, p) for i, p in enumerate(phones)}

	return DecodingGraph(hmmset, nodes, arcs, starts, ends, GraphKind.PHONE_LOOP)

def buildWordGraph(hmmset, lexicon, *, triphones = False, words = None):
	'''
	Word loop: each pronunciation is a chain of phone models; every word end leads to every word start with a zero weight, through a single loop-back point.

	Parameters
	----------
	hmmset : HmmSet
		The phone models.

	lexicon : Lexicon
		The words and their pronunciations.

	triphones : bool
		`True` to use word-internal triphone units (resolved through the tying map).

	words : list
		Restrict the loop to some words.

	Raises
	------
	UnknownUnitError
		A phone of the lexicon resolves to no model.

	Returns
	-------
	graph : DecodingGraph
		The WORD_LOOP graph.
	'''

	nodes = []
	arcs = []
	chain_starts = []
	chain_ends = []

	for word in (words if words is not None else lexicon.words):
		for pron in lexicon.pronunciations(word):
			units = triphoneSequence(pron) if triphones else list(pron)
			first = len(nodes)

			for position, (unit, phone) in enumerate(zip(units, pron)):
				nodes.append(GraphNode(unit, phone, word, position))

				if position > 0:
					arcs.append(Arc(len(nodes) - 2, len(nodes) - 1))

			chain_starts.append(first)
			chain_ends.append(len(nodes) - 1)

	loop = LoopBack({e: 0.0 for e in chain_ends}, {s: 0.0 for s in chain_starts})

	return DecodingGraph(hmmset, nodes, arcs, {s: 0.0 for s in chain_starts}, {e: 0.0 for e in chain_ends}, GraphKind.WORD_LOOP, loop)

def buildLinearGraph(hmmset, units, *, phones = None, word = None):
	'''
	A single chain of units, the graph equivalent of a forced alignment.

	Parameters
	----------
	hmmset : HmmSet
		The models.

	units : list
		The units, in order.

	phones : list
		Phone of each unit (the units themselves by default).

	word : str
		If given, the chain is a single word.

	Returns
	-------
	graph : DecodingGraph
		The LINEAR graph.
	'''

	units = list(units)
	phones = list(phones) if phones is not None else units

	if word is None:
		nodes = [GraphNode(u, p, p) for u, p in zip(units, phones)]

	else:
		nodes = [GraphNode(u, p, word, i) for i, (u, p) in enumerate(zip(units, phones))]

	arcs = [Arc(i, i + 1) for i in range(len(units) - 1)]

	return DecodingGraph(hmmset, nodes, arcs, {0: 0.0}, {len(units) - 1: 0.0}, GraphKind.LINEAR)
