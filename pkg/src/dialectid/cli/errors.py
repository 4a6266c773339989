#!/usr/bin/env python3
# -*- coding: utf-8 -*-

class CliError(Exception):
	'''
	Base class for exceptions occurring in the command-line layer.
	'''

	pass

class ConfigError(CliError):
	'''
	Base class for invalid run configurations.
	'''

	pass

class UnknownSettingError(ConfigError):
	'''
	Exception raised when a setting does not exist.

	Parameters
	----------
	key : str
		Dotted name of the setting.
	'''

	def __init__(self, key):
		super().__init__(f'unknown setting `{key}`')
		self.key = key

class InvalidSettingError(ConfigError):
	'''
	Exception raised when a setting has an invalid value.

	Parameters
	----------
	key : str
		Dotted name of the setting.

	value : object
		The value.

	reason : str
		What is wrong.
	'''

	def __init__(self, key, value, reason):
		super().__init__(f'invalid value {value!r} for `{key}`: {reason}')
		self.key = key
		self.value = value
		self.reason = reason

class UnknownSystemError(ConfigError):
	'''
	Exception raised when a system name is not known.

	Parameters
	----------
	name : str
		The name.

	known : list
		Names of the known systems.
	'''

	def __init__(self, name, known):
		super().__init__(f'unknown system `{name}` (known: {", ".join(known)})')
		self.name = name
		self.known = known

class MissingPathError(ConfigError):
	'''
	Exception raised when a path the run needs does not exist.

	Parameters
	----------
	key : str
		Name of the path setting.

	path : str
		The path.
	'''

	def __init__(self, key, path):
		super().__init__(f'`{key}` points to a missing path: {path}')
		self.key = key
		self.path = path

class MissingModelError(CliError):
	'''
	Exception raised when identifying with a model that has not been trained.

	Parameters
	----------
	name : str
		Name of the model.

	filename : str
		Where the model was expected.
	'''

	def __init__(self, name, filename):
		super().__init__(f'model `{name}` not found ({filename}), run `dialectid train` first')
		self.name = name
		self.filename = filename
