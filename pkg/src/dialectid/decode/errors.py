#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class DecodeError(Exception):
	'''
	Base class for exceptions occurring while building graphs, estimating language models or decoding.
	'''

	pass

class SearchFailureError(DecodeError):
	'''
	Exception raised when no path survives the search (beam too tight or no complete path).

	Parameters
	----------
	frame : int
		Frame where the last token died (`None` if no path reaches the end).

	beam : float
		The beam used.
	'''

	def __init__(self, frame, beam):
		where = f'at frame {frame}' if frame is not None else 'at the end of the utterance'
		super().__init__(f'no surviving path {where} (beam {beam})')
		self.frame = frame
		self.beam = beam

class GraphConnectivityError(DecodeError):
	'''
	Exception raised when nodes of a graph cannot be reached from a start node or cannot reach an end node.

	Parameters
	----------
	nodes : list
		Indices of the faulty nodes.
	'''

	def __init__(self, nodes):
		super().__init__(f'{len(nodes)} node(s) not on a start-to-end path: {nodes[:10]}')
		self.nodes = nodes

class EmptyGraphError(DecodeError):
	'''
	Exception raised when a graph has no node (e.g. built from an empty lexicon).
	'''

	def __init__(self):
		super().__init__('empty decoding graph')

class EmptyTranscriptsError(DecodeError):
	'''
	Exception raised when a language model is estimated without data.
	'''

	def __init__(self):
		super().__init__('no transcript to estimate the language model from')

class DecodeFormatError(DecodeError):
	'''
	Exception raised when a decode output line cannot be parsed.

	Parameters
	----------
	line : str
		The line.

	reason : str
		What is wrong.
	'''

	def __init__(self, line, reason):
		super().__init__(f'{reason}: `{line}`')
		self.line = line
		self.reason = reason
