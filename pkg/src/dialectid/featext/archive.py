#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import struct

import numpy as np

from .errors import *
from .mfcc import FeatureMatrix
from ..utils import AtomicFile

MAGIC = b'DIDFEAT\x00'
VERSION = 1

# little-endian: version, count / id length / T, D, frame shift
HEADER = struct.Struct('<II')
ID_LENGTH = struct.Struct('<I')
RECORD = struct.Struct('<IId')

class FeatureArchive():
	'''
	Binary container of feature matrices.

	Layout (little-endian):
		8 bytes    magic `DIDFEAT\\0`
		uint32     version
		uint32     number of records
	then, per record:
		uint32     length L of the utterance id
		L bytes    utterance id, UTF-8
		uint32     T
		uint32     D
		float64    frame shift (seconds)
		T×D        float64 values, row-major
	'''

	@staticmethod
	def write(features, filename):
		'''
		Write matrices, atomically, in the given order.

		Parameters
		----------
		features : list
			FeatureMatrix instances, each with an origin.

		filename : str
			Path to the archive.
		'''

		with AtomicFile(filename, 'wb') as f:
			f.write(MAGIC)
			f.write(HEADER.pack(VERSION, len(features)))

			for feat in features:
				utt_id = (feat.origin or '').encode('utf-8')

				f.write(ID_LENGTH.pack(len(utt_id)))
				f.write(utt_id)
				f.write(RECORD.pack(feat.num_frames, feat.dim, feat.frame_shift))
				f.write(np.ascontiguousarray(feat.frames, dtype = '<f8').tobytes())

	@staticmethod
	def read(filename):
		'''
		Read an archive.

		Parameters
		----------
		filename : str
			Path to the archive.

		Raises
		------
		FeatureArchiveError
			Bad magic, unsupported version, truncated content or duplicated ids.

		Returns
		-------
		features : dict
			Utterance id → FeatureMatrix, in archive order.
		'''

		with open(filename, 'rb') as f:
			data = f.read()

		def take(offset, size):
			if offset + size > len(data):
				raise FeatureArchiveError(filename, 'truncated archive')

			return data[offset:offset+size], offset + size

		magic, offset = take(0, len(MAGIC))
		if magic != MAGIC:
			raise FeatureArchiveError(filename, 'not a feature archive')

		chunk, offset = take(offset, HEADER.size)
		version, count = HEADER.unpack(chunk)

		if version != VERSION:
			raise FeatureArchiveError(filename, f'unsupported version {version}')

		features = {}

		for _ in range(count):
			chunk, offset = take(offset, ID_LENGTH.size)
			chunk, offset = take(offset, ID_LENGTH.unpack(chunk)[0])
			utt_id = chunk.decode('utf-8')

			chunk, offset = take(offset, RECORD.size)
			T, D, frame_shift = RECORD.unpack(chunk)

			chunk, offset = take(offset, 8 * T * D)
			frames = np.frombuffer(chunk, dtype = '<f8').reshape(T, D)

			if utt_id in features:
				raise FeatureArchiveError(filename, f'duplicated utterance id `{utt_id}`')

			features[utt_id] = FeatureMatrix(frames, frame_shift, utt_id)

		if offset != len(data):
			raise FeatureArchiveError(filename, 'trailing bytes after the last record')

		return features
