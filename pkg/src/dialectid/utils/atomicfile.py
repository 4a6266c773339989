#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import tempfile

class AtomicFile:
	'''
	Write a file so that readers only ever see the previous content or the complete new one.
	The content goes to a temporary file in the same folder, renamed over the target on success and deleted on failure.

	Parameters
	----------
	filename : str
		Path to the file to write.

	mode : str
		Mode to use to open the temporary file (`'w'` or `'wb'`).
	'''

	def __init__(self, filename, mode = 'w'):
		self._filename = filename
		self._mode = mode

		self._tmp_name = None
		self._file = None

	def __enter__(self):
		'''
		Context manager to automatically commit or discard the file.
		'''

		return self.open()

	def __exit__(self, type, value, traceback):
		'''
		Commit the file if no exception occurred, discard it otherwise.
		'''

		if type is None:
			self.commit()

		else:
			self.discard()

	def open(self):
		'''
		Create the temporary file.

		Returns
		-------
		file : file-like object
			The temporary file, opened with the requested mode.
		'''

		dirname = os.path.dirname(os.path.abspath(self._filename))
		os.makedirs(dirname, exist_ok = True)

		fd, self._tmp_name = tempfile.mkstemp(dir = dirname, prefix = f'.{os.path.basename(self._filename)}.', suffix = '.tmp')

		encoding = None if 'b' in self._mode else 'utf-8'
		self._file = os.fdopen(fd, self._mode, encoding = encoding)

		return self._file

	def commit(self):
		'''
		Close the temporary file and move it over the target.
		'''

		if self._file is not None:
			self._file.close()
			os.replace(self._tmp_name, self._filename)
			self._file = None

	def discard(self):
		'''
		Close and delete the temporary file, leaving the target untouched.
		'''

		if self._file is not None:
			self._file.close()
			os.unlink(self._tmp_name)
			self._file = None
