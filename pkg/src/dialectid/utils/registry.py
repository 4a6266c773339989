#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import inspect
import re

from .errors import *

class Registry():
	'''
	A named collection of functions, filled by hand or from the functions of a module whose names match a filter regex.
	The pipeline uses it to find the builder of each identification system (`system_gmm`, `system_upr2`, ...).

	Parameters
	----------
	filter_regex : str
		Regex used to filter the functions of a module. Must define a group named `name`.
	'''

	def __init__(self, filter_regex = None):
		self._entries = {}
		self._filter_regex = None

		if filter_regex:
			self.setFilterRegex(filter_regex)

	def __contains__(self, name):
		return name in self._entries

	@property
	def names(self):
		'''
		Names of the registered functions, in registration order.

		Returns
		-------
		names : list
			The names.
		'''

		return list(self._entries.keys())

	def set(self, name, f):
		'''
		Add a function, or replace an existing one.

		Parameters
		----------
		name : str
			Name of the function.

		f : function
			Function to store.
		'''

		self._entries[name] = f

	def get(self, name):
		'''
		Get a function.

		Parameters
		----------
		name : str
			Name of the function.

		Raises
		------
		RegistryEntryNotFoundError
			The function has not been found.

		Returns
		-------
		f : function
			The wanted function.
		'''

		try:
			return self._entries[name]

		except KeyError:
			raise RegistryEntryNotFoundError(name)

	def call(self, name, *args, **kwargs):
		'''
		Call a registered function.

		Parameters
		----------
		name : str
			Name of the function to call.

		args, kwargs : mixed
			Arguments to pass to the function.

		Returns
		-------
		output : mixed
			Output of the called function.
		'''

		return self.get(name)(*args, **kwargs)

	def setFilterRegex(self, filter_regex):
		'''
		Define the filter regex. It must define a group named `name` matching the registered name.

		Parameters
		----------
		filter_regex : str
			Filter regex to define.

		Raises
		------
		RegistryInvalidFilterRegexError
			The regex does not contain the `name` group.
		'''

		regex = re.compile(filter_regex)

		if not('name' in regex.groupindex):
			raise RegistryInvalidFilterRegexError(filter_regex)

		self._filter_regex = regex

	def loadFromModule(self, module):
		'''
		Register the functions of a module matching the filter regex, in source order.

		Parameters
		----------
		module : module
			Module (already loaded) where the functions are defined.
		'''

		for fname, f in vars(module).items():
			if not(inspect.isfunction(f)) or f.__module__ != module.__name__:
				continue

			match = self._filter_regex.match(fname)

			if match:
				self.set(match.group('name'), f)
