#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class GmmError(Exception):
	'''
	Base class for exceptions occurring with Gaussian mixtures.
	'''

	pass

class GmmDimensionError(GmmError):
	'''
	Exception raised when features do not have the dimension of the model.

	Parameters
	----------
	expected : int
		Dimension of the model.

	found : int
		Dimension of the features.
	'''

	def __init__(self, expected, found):
		super().__init__(f'expected {expected}-dimensional frames, got {found}')
		self.expected = expected
		self.found = found

class GmmInvariantError(GmmError):
	'''
	Exception raised when a mixture breaks one of its invariants (weights not summing to 1, non-positive variance, inconsistent shapes).

	Parameters
	----------
	reason : str
		The broken invariant.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason

class NotEnoughFramesError(GmmError):
	'''
	Exception raised when there are fewer frames than mixture components.

	Parameters
	----------
	frames : int
		Number of frames.

	components : int
		Number of components.
	'''

	def __init__(self, frames, components):
		super().__init__(f'{frames} frame(s) for {components} component(s)')
		self.frames = frames
		self.components = components

class NonFiniteLikelihoodError(GmmError):
	'''
	Exception raised when EM produces a non-finite log-likelihood.

	Parameters
	----------
	iteration : int
		The faulty iteration.
	'''

	def __init__(self, iteration):
		super().__init__(f'non-finite log-likelihood at EM iteration {iteration}')
		self.iteration = iteration

class MissingDialectModelError(GmmError):
	'''
	Exception raised when a classifier lacks the model of a dialect.

	Parameters
	----------
	dialect : str
		The dialect.
	'''

	def __init__(self, dialect):
		super().__init__(f'no model for dialect {dialect}')
		self.dialect = dialect
