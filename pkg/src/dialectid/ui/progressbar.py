#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from math import floor, log10

class ProgressBar():
	'''
	Counter of a task and its text rendering: `counter/total`, the bar, and the percentage.

	Parameters
	----------
	total : int
		Value of the counter once the task is done.

	length : int
		Length of the bar, in characters.

	empty_char, full_char : str
		Characters of the empty and filled parts.
	'''

	def __init__(self, total, *, length = 40, empty_char = '░', full_char = '█'):
		self._total = max(1, total)
		self._counter = 0

		self._length = length
		self._empty_char = empty_char
		self._full_char = full_char

		# one decimal per order of magnitude above 100 items
		self._precision = abs(floor(log10(100 / self._total))) if self._total > 100 else 0

	@property
	def total(self):
		return self._total

	@property
	def counter(self):
		return self._counter

	@counter.setter
	def counter(self, n):
		self._counter = max(0, min(n, self._total))

	@property
	def fraction(self):
		return self._counter / self._total

	def advance(self, delta = 1):
		self.counter = self._counter + delta

	def __str__(self):
		filled = round(self.fraction * self._length)
		bar = self._full_char * filled + self._empty_char * (self._length - filled)

		return f'{self._counter:>{len(str(self._total))}d}/{self._total} {bar} {self.fraction:>{5 + self._precision}.{self._precision}%}'
