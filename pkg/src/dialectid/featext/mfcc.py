#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import functools

import numpy as np
import scipy.fft

from .audio import trimSilence
from .errors import *

NUM_STATIC = 13

@dataclasses.dataclass(frozen = True)
class MfccConfig():
	'''
	Parameters of the MFCC front-end. The defaults (25 ms frames, 10 ms shift, 26 mel filters, pre-emphasis 0.97, delta window 2) are the usual ones.

	Raises
	------
	MfccConfigError
		Inconsistent values.
	'''

	frame_length: float = 0.025
	frame_shift: float = 0.01
	num_mel_filters: int = 26
	num_cepstra: int = NUM_STATIC
	pre_emphasis: float = 0.97
	delta_window: int = 2
	nfft: int = None
	low_freq: float = 0.0
	high_freq: float = None

	def __post_init__(self):
		if self.frame_shift <= 0 or self.frame_length <= 0:
			raise MfccConfigError('frame length and shift must be positive')

		if self.frame_shift > self.frame_length:
			raise MfccConfigError(f'frame shift ({self.frame_shift}) is larger than the frame length ({self.frame_length})')

		if not(1 <= self.num_cepstra <= self.num_mel_filters):
			raise MfccConfigError(f'need 1 <= num_cepstra ({self.num_cepstra}) <= num_mel_filters ({self.num_mel_filters})')

		if self.delta_window < 1:
			raise MfccConfigError('delta window must be at least 1')

		if not(0 <= self.pre_emphasis < 1):
			raise MfccConfigError('pre-emphasis coefficient must be in [0, 1[')

	def frameSamples(self, sample_rate):
		'''
		Frame length and shift, in samples.
		'''

		return int(round(self.frame_length * sample_rate)), int(round(self.frame_shift * sample_rate))

	def fftSize(self, sample_rate):
		'''
		FFT size: the configured one, or the smallest power of 2 holding a frame.
		'''

		if self.nfft is not None:
			return self.nfft

		frame, _ = self.frameSamples(sample_rate)
		return 1 << max(0, (frame - 1).bit_length())

	def toDict(self):
		return dataclasses.asdict(self)

	@classmethod
	def fromDict(cls, obj):
		fields = {f.name for f in dataclasses.fields(cls)}
		return cls(**{k: v for k, v in obj.items() if k in fields})

class FeatureMatrix():
	'''
	Time-ordered feature frames of an utterance.

	Parameters
	----------
	frames : array_like
		T × D matrix.

	frame_shift : float
		Time between two frames, in seconds.

	origin : str
		Identifier of the utterance.

	Raises
	------
	InvalidFeatureMatrixError
		Not a non-empty 2D matrix of finite values.
	'''

	def __init__(self, frames, frame_shift = 0.01, origin = None):
		frames = np.array(frames, dtype = np.float64)

		if frames.ndim != 2:
			raise InvalidFeatureMatrixError(f'expected a T × D matrix, got shape {frames.shape}')

		if frames.shape[0] < 1 or frames.shape[1] < 1:
			raise InvalidFeatureMatrixError(f'empty feature matrix {frames.shape}')

		if not(np.all(np.isfinite(frames))):
			raise InvalidFeatureMatrixError('non-finite feature values')

		frames.flags.writeable = False

		self._frames = frames
		self._frame_shift = float(frame_shift)
		self._origin = origin

	def __len__(self):
		return self._frames.shape[0]

	def __eq__(self, other):
		return isinstance(other, FeatureMatrix) and self._origin == other._origin and self._frame_shift == other._frame_shift and np.array_equal(self._frames, other._frames)

	@property
	def frames(self):
		return self._frames

	@property
	def num_frames(self):
		return self._frames.shape[0]

	@property
	def dim(self):
		return self._frames.shape[1]

	@property
	def frame_shift(self):
		return self._frame_shift

	@property
	def origin(self):
		return self._origin

	def withFrames(self, frames):
		'''
		New matrix with the same shift and origin.
		'''

		return FeatureMatrix(frames, self._frame_shift, self._origin)

	def segment(self, start, end):
		'''
		Frames [start, end).
		'''

		return self.withFrames(self._frames[start:end])

def frameCount(length, frame_length, frame_shift):
	'''
	Number of complete frames: floor((length - frame_length) / frame_shift) + 1, 0 if the signal is shorter than a frame.
	'''

	if length < frame_length:
		return 0

	return (length - frame_length) // frame_shift + 1

def hzToMel(f):
	return 2595.0 * np.log10(1.0 + np.asarray(f) / 700.0)

def melToHz(m):
	return 700.0 * (10.0 ** (np.asarray(m) / 2595.0) - 1.0)

@functools.lru_cache(maxsize = 16)
def melFilterbank(num_filters, nfft, sample_rate, low_freq = 0.0, high_freq = None):
	'''
	Triangular filters equally spaced on the mel scale.

	Returns
	-------
	filters : ndarray
		num_filters × (nfft/2 + 1) matrix.
	'''

	high_freq = high_freq or sample_rate / 2
	mel_points = np.linspace(hzToMel(low_freq), hzToMel(high_freq), num_filters + 2)
	bins = np.floor((nfft + 1) * melToHz(mel_points) / sample_rate).astype(int)

	filters = np.zeros((num_filters, nfft // 2 + 1))

	for j in range(num_filters):
		left, center, right = bins[j], bins[j+1], bins[j+2]

		if center > left:
			filters[j, left:center] = (np.arange(left, center) - left) / (center - left)

		if right > center:
			filters[j, center:right] = (right - np.arange(center, right)) / (right - center)

		filters[j, center] = 1.0

	filters.flags.writeable = False
	return filters

@functools.lru_cache(maxsize = 16)
def dctBasis(num_filters, num_cepstra):
	'''
	Orthonormal DCT-II basis restricted to its first rows.

	Returns
	-------
	basis : ndarray
		num_cepstra × num_filters matrix with orthonormal rows.
	'''

	basis = scipy.fft.dct(np.eye(num_filters), norm = 'ortho', axis = 0)[:num_cepstra]
	basis.flags.writeable = False
	return basis

def computeMfcc(audio, cfg = None, *, origin = None):
	'''
	Static MFCCs: pre-emphasis, Hamming window, power spectrum, mel filterbank, log, DCT.

	Parameters
	----------
	audio : AudioBuffer
		The utterance.

	cfg : MfccConfig
		The front-end configuration (defaults if `None`).

	origin : str
		Identifier of the utterance.

	Raises
	------
	AudioTooShortError
		The audio is shorter than one frame.

	Returns
	-------
	features : FeatureMatrix
		T × num_cepstra matrix, T = floor((len - frame) / shift) + 1.
	'''

	cfg = cfg or MfccConfig()
	frame, shift = cfg.frameSamples(audio.sample_rate)
	nfft = cfg.fftSize(audio.sample_rate)

	num_frames = frameCount(len(audio), frame, shift)
	if num_frames < 1:
		raise AudioTooShortError(len(audio), frame)

	x = audio.samples
	emphasized = np.concatenate([x[:1], x[1:] - cfg.pre_emphasis * x[:-1]])

	frames = np.lib.stride_tricks.sliding_window_view(emphasized, frame)[::shift][:num_frames]
	frames = frames * np.hamming(frame)

	power = np.abs(np.fft.rfft(frames, nfft)) ** 2 / nfft
	energies = power @ melFilterbank(cfg.num_mel_filters, nfft, audio.sample_rate, cfg.low_freq, cfg.high_freq).T
	log_energies = np.log(np.maximum(energies, np.finfo(np.float64).tiny))

	cepstra = log_energies @ dctBasis(cfg.num_mel_filters, cfg.num_cepstra).T

	return FeatureMatrix(cepstra, cfg.frame_shift, origin)

def _regression(block, window):
	'''
	Regression deltas with edge replication.
	'''

	T = block.shape[0]
	padded = np.pad(block, ((window, window), (0, 0)), mode = 'edge')
	norm = 2 * sum(n * n for n in range(1, window + 1))

	deltas = np.zeros_like(block)
	for n in range(1, window + 1):
		deltas += n * (padded[window+n:window+n+T] - padded[window-n:window-n+T])

	return deltas / norm

def appendDeltas(static, delta_window = 2, *, num_static = NUM_STATIC):
	'''
	Append deltas and accelerations to static features.
	Only the first `num_static` columns are read, so that a 39-dimensional matrix can be given as well.

	Parameters
	----------
	static : FeatureMatrix
		T × D matrix, D ≥ num_static.

	delta_window : int
		Half-width of the regression window.

	num_static : int
		Size of the static block.

	Raises
	------
	TooFewFramesError
		Less than 2 frames.

	InvalidFeatureMatrixError
		Less than num_static columns.

	Returns
	-------
	features : FeatureMatrix
		T × (3 num_static) matrix: static, delta, acceleration.
	'''

	if static.num_frames < 2:
		raise TooFewFramesError(static.num_frames, 2)

	if static.dim < num_static:
		raise InvalidFeatureMatrixError(f'expected at least {num_static} static coefficients, got {static.dim}')

	block = static.frames[:, :num_static]
	deltas = _regression(block, delta_window)
	accelerations = _regression(deltas, delta_window)

	return static.withFrames(np.hstack([block, deltas, accelerations]))

def cepstralMeanSubtract(feat, *, num_static = NUM_STATIC):
	'''
	Subtract the per-utterance mean of each static coefficient. Delta and acceleration columns are left untouched.

	Parameters
	----------
	feat : FeatureMatrix
		The features.

	num_static : int
		Size of the static block.

	Returns
	-------
	features : FeatureMatrix
		The normalized features.
	'''

	frames = np.array(feat.frames)
	n = min(num_static, feat.dim)
	frames[:, :n] -= frames[:, :n].mean(axis = 0)

	return feat.withFrames(frames)

def fixLength(feat, target_frames):
	'''
	Zero-pad or truncate at the end to get exactly `target_frames` frames.
	'''

	if target_frames < 1:
		raise ValueError(f'target frames must be positive, got {target_frames}')

	T = feat.num_frames

	if T == target_frames:
		return feat

	if T > target_frames:
		return feat.withFrames(feat.frames[:target_frames])

	return feat.withFrames(np.vstack([feat.frames, np.zeros((target_frames - T, feat.dim))]))

def computeTargetFrames(corpus, margin = 0):
	'''
	Fixed input length of the CNN: rounded mean number of frames plus a margin.

	Parameters
	----------
	corpus : list
		FeatureMatrix instances (or frame counts).

	margin : int
		Frames added to the mean.

	Raises
	------
	EmptyCorpusError
		The corpus is empty.

	Returns
	-------
	target : int
		The length.
	'''

	lengths = [c if isinstance(c, (int, np.integer)) else len(c) for c in corpus]

	if not(lengths):
		raise EmptyCorpusError()

	return int(np.floor(np.mean(lengths) + 0.5)) + int(margin)

def extractFeatures(audio, cfg = None, *, origin = None, trim_db = -40.0, min_speech_frames = 1, cms = True):
	'''
	Full front-end: silence trimming, static MFCCs, deltas and accelerations, cepstral mean subtraction.

	Parameters
	----------
	audio : AudioBuffer
		The utterance.

	cfg : MfccConfig
		Front-end configuration.

	origin : str
		Identifier of the utterance.

	trim_db : float|None
		Trimming threshold, `None` to skip trimming.

	min_speech_frames : int
		See `trimSilence()`.

	cms : bool
		`False` to skip cepstral mean subtraction.

	Returns
	-------
	features : FeatureMatrix
		T × 39 matrix (with the default configuration).
	'''

	cfg = cfg or MfccConfig()

	if trim_db is not None:
		audio = trimSilence(audio, trim_db, min_speech_frames, frame_length = cfg.frame_length, frame_shift = cfg.frame_shift)

	features = appendDeltas(computeMfcc(audio, cfg, origin = origin), cfg.delta_window, num_static = cfg.num_cepstra)

	if cms:
		features = cepstralMeanSubtract(features, num_static = cfg.num_cepstra)

	return features
