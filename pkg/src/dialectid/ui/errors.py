#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class UIError(Exception):
	'''
	Base class for exceptions occurring in the terminal display.
	'''

	pass

class DisplayClosedError(UIError):
	'''
	Exception raised when a closed display is updated.
	'''

	def __init__(self):
		super().__init__('the display has been closed')

class NoProgressError(UIError):
	'''
	Exception raised when a progress is advanced while no progress bar is shown.
	'''

	def __init__(self):
		super().__init__('no progress bar is displayed')
