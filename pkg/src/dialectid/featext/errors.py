#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class FeatextError(Exception):
	'''
	Base class for exceptions occurring in the audio front-end.
	'''

	pass

class InvalidAudioError(FeatextError):
	'''
	Exception raised when an audio buffer is not valid (non-positive sample rate, non-finite samples, wrong shape).

	Parameters
	----------
	reason : str
		What is wrong.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason

class AudioFormatError(FeatextError):
	'''
	Exception raised when an audio file cannot be read as PCM WAV.

	Parameters
	----------
	filename : str
		Path to the file.

	reason : str
		What is wrong.
	'''

	def __init__(self, filename, reason):
		super().__init__(f'{filename}: {reason}')
		self.filename = filename
		self.reason = reason

class EmptyAfterTrimError(FeatextError):
	'''
	Exception raised when silence trimming removes everything.

	Parameters
	----------
	threshold_db : float
		The energy threshold used, relative to the peak.
	'''

	def __init__(self, threshold_db):
		super().__init__(f'no speech left after trimming at {threshold_db} dB')
		self.threshold_db = threshold_db

class AudioTooShortError(FeatextError):
	'''
	Exception raised when an audio buffer is shorter than one analysis frame.

	Parameters
	----------
	length : int
		Number of samples.

	frame_length : int
		Number of samples of a frame.
	'''

	def __init__(self, length, frame_length):
		super().__init__(f'{length} samples, shorter than one frame of {frame_length} samples')
		self.length = length
		self.frame_length = frame_length

class MfccConfigError(FeatextError):
	'''
	Exception raised when the MFCC configuration is inconsistent.

	Parameters
	----------
	reason : str
		What is wrong.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason

class InvalidFeatureMatrixError(FeatextError):
	'''
	Exception raised when a feature matrix is empty, not 2-dimensional or holds non-finite values.

	Parameters
	----------
	reason : str
		What is wrong.
	'''

	def __init__(self, reason):
		super().__init__(reason)
		self.reason = reason

class TooFewFramesError(FeatextError):
	'''
	Exception raised when an operation needs more frames than available.

	Parameters
	----------
	available : int
		Number of frames.

	required : int
		Minimal number of frames.
	'''

	def __init__(self, available, required):
		super().__init__(f'{available} frame(s), at least {required} needed')
		self.available = available
		self.required = required

class EmptyCorpusError(FeatextError):
	'''
	Exception raised when a statistic is asked on an empty set of utterances.
	'''

	def __init__(self):
		super().__init__('empty corpus')

class FeatureArchiveError(FeatextError):
	'''
	Exception raised when a feature archive is malformed.

	Parameters
	----------
	filename : str
		Path to the archive.

	reason : str
		What is wrong.
	'''

	def __init__(self, filename, reason):
		super().__init__(f'{filename}: {reason}')
		self.filename = filename
		self.reason = reason
