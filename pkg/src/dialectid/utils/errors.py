#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class EventsError(Exception):
	'''
	Base class for exceptions occurring with the Events class.
	'''

	pass

class EventUnknownError(EventsError):
	'''
	Exception raised when we try to use an unknown event.

	Parameters
	----------
	event : str
		Name of the event.
	'''

	def __init__(self, event):
		super().__init__(f'unknown event `{event}`')
		self.event = event

class RegistryError(Exception):
	'''
	Base class for exceptions occurring in a Registry.
	'''

	pass

class RegistryEntryNotFoundError(RegistryError):
	'''
	Exception raised when we try to access a non-existing entry of a Registry.

	Parameters
	----------
	name : str
		Name of the entry.
	'''

	def __init__(self, name):
		super().__init__(f'no entry named `{name}`')
		self.name = name

class RegistryInvalidFilterRegexError(RegistryError):
	'''
	Exception raised when the filter regex of a Registry lacks the `name` group.

	Parameters
	----------
	regex : str
		The invalid regex.
	'''

	def __init__(self, regex):
		super().__init__(f'filter regex `{regex}` has no `name` group')
		self.regex = regex

class ContainerError(Exception):
	'''
	Base class for exceptions occurring while reading a versioned container.
	'''

	pass

class ContainerFormatError(ContainerError):
	'''
	Exception raised when a container does not hold the expected format or version.

	Parameters
	----------
	filename : str
		Path to the container.

	expected : str
		The expected format name.

	found : str
		The format (and version) found in the file.
	'''

	def __init__(self, filename, expected, found):
		super().__init__(f'{filename}: expected a `{expected}` container, found `{found}`')
		self.filename = filename
		self.expected = expected
		self.found = found
