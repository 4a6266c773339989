#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import sys

from .errors import *
from .progressbar import ProgressBar

# ANSI sequences: cursor up by n lines, erase the whole line
CURSOR_UP = '\u001b[{n}A'
ERASE_LINE = '\u001b[2K'

class StatusDisplay():
	'''
	A block of terminal lines redrawn in place: a status line, and a progress bar under it while a task is counted.

	Parameters
	----------
	stream : file-like object
		Where to draw, the standard error by default (the standard output may hold results).

	bar_length : int
		Length of the progress bars.
	'''

	def __init__(self, stream = None, *, bar_length = 40):
		self._stream = stream or sys.stderr
		self._bar_length = bar_length

		self._status = None
		self._progress = None
		self._drawn_lines = 0
		self._closed = False

	@property
	def status(self):
		return self._status

	@property
	def progress(self):
		return self._progress

	def _lines(self):
		lines = []

		if self._status is not None:
			lines.append(self._status)

		if self._progress is not None:
			lines.append(str(self._progress))

		return lines

	def _redraw(self):
		if self._closed:
			raise DisplayClosedError()

		out = []

		if self._drawn_lines:
			out.append(CURSOR_UP.format(n = self._drawn_lines) + '\r')

		lines = self._lines()

		for line in lines:
			out.append(f'{ERASE_LINE}{line}\n')

		# lines left over from a taller block
		for _ in range(self._drawn_lines - len(lines)):
			out.append(f'{ERASE_LINE}\n')

		if self._drawn_lines > len(lines):
			out.append(CURSOR_UP.format(n = self._drawn_lines - len(lines)) + '\r')

		self._drawn_lines = len(lines)

		self._stream.write(''.join(out))
		self._stream.flush()

	def setStatus(self, text):
		'''
		Replace the status line (`None` to remove it).
		'''

		self._status = text
		self._redraw()

	def startProgress(self, total):
		'''
		Show a progress bar, replacing the current one.

		Parameters
		----------
		total : int
			Value of the counter at 100%.

		Returns
		-------
		bar : ProgressBar
			The bar.
		'''

		self._progress = ProgressBar(total, length = self._bar_length)
		self._redraw()

		return self._progress

	def setProgress(self, counter = None, *, delta = None):
		'''
		Move the progress bar to a value, or forward by some steps.

		Raises
		------
		NoProgressError
			No progress bar is shown.
		'''

		if self._progress is None:
			raise NoProgressError()

		if counter is not None:
			self._progress.counter = counter

		else:
			self._progress.advance(1 if delta is None else delta)

		self._redraw()

	def stopProgress(self):
		self._progress = None
		self._redraw()

	def clear(self):
		'''
		Remove the status line and the progress bar.
		'''

		self._status = None
		self._progress = None
		self._redraw()

	def close(self):
		if not(self._closed):
			self.clear()
			self._closed = True
