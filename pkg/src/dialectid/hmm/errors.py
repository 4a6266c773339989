#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class HmmError(Exception):
	'''
	Base class for exceptions occurring with phone HMMs.
	'''

	pass

class HmmInvariantError(HmmError):
	'''
	Exception raised when a phone HMM or a set of HMMs breaks one of its invariants.

	Parameters
	----------
	reason : str
		The broken invariant.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason

class UnknownUnitError(HmmError):
	'''
	Exception raised when a unit (phone or triphone) resolves to no model.

	Parameters
	----------
	unit : str
		The unit.
	'''

	def __init__(self, unit):
		super().__init__(f'no model for unit `{unit}`')
		self.unit = unit

class AlignmentInfeasibleError(HmmError):
	'''
	Exception raised when an utterance is too short to be aligned with a sequence of units (each state needs a frame).

	Parameters
	----------
	required : int
		Minimal number of frames.

	available : int
		Number of frames of the utterance.
	'''

	def __init__(self, required, available):
		super().__init__(f'alignment needs at least {required} frames, {available} available')
		self.required = required
		self.available = available

class EmptyTrainingDataError(HmmError):
	'''
	Exception raised when there is no frame to train from.
	'''

	def __init__(self):
		super().__init__('no training frames')
