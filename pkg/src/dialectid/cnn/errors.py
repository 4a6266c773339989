#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class CnnError(Exception):
	'''
	Base class for exceptions occurring with the convolutional network.
	'''

	pass

class ShapeMismatchError(CnnError):
	'''
	Exception raised when an input does not have the shape the network expects.

	Parameters
	----------
	expected : tuple
		Expected shape (without the batch axis).

	found : tuple
		Shape of the input.
	'''

	def __init__(self, expected, found):
		super().__init__(f'expected inputs of shape {expected}, got {found}')
		self.expected = expected
		self.found = found

class LayerConfigError(CnnError):
	'''
	Exception raised when a layer cannot be built on its input shape, or has invalid hyperparameters.

	Parameters
	----------
	reason : str
		What is wrong.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason

class DatasetError(CnnError):
	'''
	Exception raised when a training set is empty or lacks one of the classes.

	Parameters
	----------
	reason : str
		What is wrong.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason

class DivergenceError(CnnError):
	'''
	Exception raised when the training loss becomes non-finite.

	Parameters
	----------
	epoch : int
		The epoch.

	loss : float
		The loss.
	'''

	def __init__(self, epoch, loss):
		super().__init__(f'training diverged at epoch {epoch} (loss {loss})')
		self.epoch = epoch
		self.loss = loss
