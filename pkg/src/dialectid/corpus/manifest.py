#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import os

from .errors import *
from .inventory import DialectLabel
from ..utils import AtomicFile

@dataclasses.dataclass(frozen = True)
class UtteranceRecord():
	'''
	One line of a manifest.
	'''

	utt_id: str
	audio_path: str
	dialect: DialectLabel
	speaker_id: str
	transcript: tuple = ()

	def audioPath(self, manifest_filename):
		'''
		Resolve the audio path, relative paths being relative to the manifest's folder.

		Parameters
		----------
		manifest_filename : str
			Path to the manifest the record comes from.

		Returns
		-------
		path : str
			The path to the audio file.
		'''

		if os.path.isabs(self.audio_path):
			return self.audio_path

		return os.path.normpath(os.path.join(os.path.dirname(os.path.abspath(manifest_filename)), self.audio_path))

	def toLine(self):
		return '\t'.join([self.utt_id, self.audio_path, self.dialect.value, self.speaker_id, ' '.join(self.transcript)])

def loadManifest(filename, *, require_transcript = False):
	'''
	Read a manifest: UTF-8, tab-separated `utt_id, path, dialect, speaker, transcript`.
	Empty lines and lines starting with `#` are ignored.

	Parameters
	----------
	filename : str
		Path to the manifest.

	require_transcript : bool
		`True` to refuse records without transcript (training sets of the explicit systems).

	Raises
	------
	ManifestFormatError
		A line does not have the expected columns.

	DuplicateUtteranceError
		Two records share the same identifier.

	UnknownDialectError
		A dialect tag is neither LT nor CT.

	MissingTranscriptError
		A transcript is empty while required.

	Returns
	-------
	records : list
		The records, in file order.
	'''

	records = []
	seen = set()

	with open(filename, 'r', encoding = 'utf-8') as f:
		for line_number, line in enumerate(f, start = 1):
			line = line.rstrip('\n').rstrip('\r')

			if not(line.strip()) or line.lstrip().startswith('#'):
				continue

			columns = line.split('\t')

			if len(columns) == 4:
				columns.append('')

			if len(columns) != 5:
				raise ManifestFormatError(filename, line_number, f'expected 5 tab-separated columns, found {len(columns)}')

			utt_id, audio_path, dialect, speaker_id, transcript = [c.strip() for c in columns]

			for name, value in [('utt_id', utt_id), ('path', audio_path), ('speaker', speaker_id)]:
				if not(value):
					raise ManifestFormatError(filename, line_number, f'empty {name}')

			if utt_id in seen:
				raise DuplicateUtteranceError(utt_id, line_number)

			seen.add(utt_id)

			record = UtteranceRecord(utt_id, audio_path, DialectLabel.parse(dialect, line_number), speaker_id, tuple(transcript.split()))

			if require_transcript and not(record.transcript):
				raise MissingTranscriptError(utt_id)

			records.append(record)

	return records

def writeManifest(records, filename):
	'''
	Write a manifest, atomically.

	Parameters
	----------
	records : list
		The records to write, in order.

	filename : str
		Path to the manifest.

	Raises
	------
	DuplicateUtteranceError
		Two records share the same identifier.
	'''

	seen = set()

	for record in records:
		if record.utt_id in seen:
			raise DuplicateUtteranceError(record.utt_id)

		seen.add(record.utt_id)

	with AtomicFile(filename, 'w') as f:
		for record in records:
			f.write(record.toLine() + '\n')
