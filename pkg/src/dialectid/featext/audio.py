#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import scipy.io.wavfile

from .errors import *
from ..utils import AtomicFile

PCM16_SCALE = 32768.0

class AudioBuffer():
	'''
	Mono audio samples, normalized to [-1, 1].

	Parameters
	----------
	samples : array_like
		The samples.

	sample_rate : int
		Sample rate, in Hz.

	Raises
	------
	InvalidAudioError
		Non-positive sample rate, non-finite samples or non-1D array.
	'''

	def __init__(self, samples, sample_rate):
		samples = np.array(samples, dtype = np.float64)

		if sample_rate <= 0:
			raise InvalidAudioError(f'sample rate must be positive, got {sample_rate}')

		if samples.ndim != 1:
			raise InvalidAudioError(f'expected mono samples, got shape {samples.shape}')

		if not(np.all(np.isfinite(samples))):
			raise InvalidAudioError('non-finite samples')

		samples.flags.writeable = False

		self._samples = samples
		self._sample_rate = int(sample_rate)

	def __len__(self):
		return len(self._samples)

	@property
	def samples(self):
		return self._samples

	@property
	def sample_rate(self):
		return self._sample_rate

	@property
	def duration(self):
		'''
		Duration, in seconds.
		'''

		return len(self._samples) / self._sample_rate

	def slice(self, start, end):
		'''
		Extract a part of the buffer.

		Parameters
		----------
		start, end : int
			Bounds, in samples.

		Returns
		-------
		buffer : AudioBuffer
			The extracted samples.
		'''

		return AudioBuffer(self._samples[start:end], self._sample_rate)

def readWav(filename):
	'''
	Read a WAV file. Integer PCM is scaled to [-1, 1], multichannel audio is averaged to mono.

	Parameters
	----------
	filename : str
		Path to the file.

	Raises
	------
	AudioFormatError
		The file cannot be read.

	Returns
	-------
	audio : AudioBuffer
		The samples.
	'''

	try:
		sample_rate, data = scipy.io.wavfile.read(filename)

	except ValueError as e:
		raise AudioFormatError(filename, str(e))

	if data.dtype == np.int16:
		samples = data / PCM16_SCALE

	elif data.dtype == np.int32:
		samples = data / 2147483648.0

	elif data.dtype == np.uint8:
		samples = (data.astype(np.float64) - 128.0) / 128.0

	elif np.issubdtype(data.dtype, np.floating):
		samples = data.astype(np.float64)

	else:
		raise AudioFormatError(filename, f'unsupported sample type {data.dtype}')

	if samples.ndim == 2:
		samples = samples.mean(axis = 1)

	return AudioBuffer(samples, sample_rate)

def writeWav(audio, filename):
	'''
	Write a buffer as 16-bit PCM mono WAV, atomically. Samples are clipped to [-1, 1].

	Parameters
	----------
	audio : AudioBuffer
		The samples.

	filename : str
		Path to the file.
	'''

	pcm = np.round(np.clip(audio.samples, -1.0, 1.0) * (PCM16_SCALE - 1)).astype(np.int16)

	with AtomicFile(filename, 'wb') as f:
		scipy.io.wavfile.write(f, audio.sample_rate, pcm)

def frameEnergies(samples, frame_length, frame_shift):
	'''
	Mean squared amplitude of each frame.

	Parameters
	----------
	samples : ndarray
		The samples.

	frame_length, frame_shift : int
		Framing, in samples. A signal shorter than one frame is a single frame.

	Returns
	-------
	energies : ndarray
		One value per frame.
	'''

	if len(samples) < frame_length:
		return np.array([np.mean(samples ** 2)])

	frames = np.lib.stride_tricks.sliding_window_view(samples, frame_length)[::frame_shift]
	return np.mean(frames ** 2, axis = 1)

def trimSilence(audio, energy_threshold_db = -40.0, min_speech_frames = 1, *, frame_length = 0.025, frame_shift = 0.01):
	'''
	Remove the leading and trailing silence of an utterance.
	A frame is speech when its energy, relative to the loudest frame, is at least the threshold. The kept part goes from the first to the last run of `min_speech_frames` consecutive speech frames; interior silence is kept.

	Parameters
	----------
	audio : AudioBuffer
		The utterance.

	energy_threshold_db : float
		Threshold relative to the peak frame energy, in dB (negative).

	min_speech_frames : int
		Minimal length of a run of speech frames marking an edge.

	frame_length, frame_shift : float
		Framing used to compute the energies, in seconds.

	Raises
	------
	InvalidAudioError
		The buffer is empty.

	EmptyAfterTrimError
		No run of speech frames has been found.

	Returns
	-------
	trimmed : AudioBuffer
		The trimmed utterance (the buffer itself if nothing is trimmed).
	'''

	if len(audio) == 0:
		raise InvalidAudioError('empty audio buffer')

	frame = int(round(frame_length * audio.sample_rate))
	shift = int(round(frame_shift * audio.sample_rate))

	energies = frameEnergies(audio.samples, frame, shift)
	peak = energies.max()

	if peak <= 0:
		raise EmptyAfterTrimError(energy_threshold_db)

	with np.errstate(divide = 'ignore'):
		levels = 10 * np.log10(energies / peak)

	speech = levels >= energy_threshold_db
	m = max(1, int(min_speech_frames))

	# runs[i]: frames i..i+m-1 are all speech
	runs = np.lib.stride_tricks.sliding_window_view(speech, m).all(axis = 1) if len(speech) >= m else np.zeros(0, dtype = bool)

	if not(runs.any()):
		raise EmptyAfterTrimError(energy_threshold_db)

	first = int(np.argmax(runs))
	last = int(len(runs) - 1 - np.argmax(runs[::-1])) + m - 1

	start = first * shift
	end = len(audio) if last == len(energies) - 1 else min(len(audio), last * shift + frame)

	if start == 0 and end == len(audio):
		return audio

	return audio.slice(start, end)
