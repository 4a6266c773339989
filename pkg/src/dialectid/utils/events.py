#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *

class Events():
	'''
	Simple implementation of an events handling system.
	Trainers and pipelines publish their progress through it, the UI and the tests listen.

	Parameters
	----------
	events_names : list
		Names of the events handled by this instance.
	'''

	def __init__(self, events_names):
		self._callbacks = {name: [] for name in events_names}

	@property
	def names(self):
		'''
		Names of the handled events.

		Returns
		-------
		names : list
			The events names, in declaration order.
		'''

		return list(self._callbacks.keys())

	def addListener(self, event, f):
		'''
		Add a callback function to a given event.

		Parameters
		----------
		event : str
			Name of the event.

		f : function
			Function to attach.

		Raises
		------
		EventUnknownError
			The event does not exist.
		'''

		try:
			self._callbacks[event].append(f)

		except KeyError:
			raise EventUnknownError(event)

	def removeListener(self, event, f):
		'''
		Detach a callback function. Nothing happens if it was not attached.

		Parameters
		----------
		event : str
			Name of the event.

		f : function
			Function to detach.

		Raises
		------
		EventUnknownError
			The event does not exist.
		'''

		try:
			callbacks = self._callbacks[event]

		except KeyError:
			raise EventUnknownError(event)

		if f in callbacks:
			callbacks.remove(f)

	def trigger(self, event, *args, **kwargs):
		'''
		Call all functions attached to a given event.

		Parameters
		----------
		event : str
			Name of the event to trigger.

		args, kwargs : mixed
			Arguments to pass to the callback functions.

		Raises
		------
		EventUnknownError
			The event does not exist.
		'''

		try:
			functions = list(self._callbacks[event])

		except KeyError:
			raise EventUnknownError(event)

		for f in functions:
			f(*args, **kwargs)

def maybeTrigger(events, event, *args, **kwargs):
	'''
	Trigger an event on an optional `Events` instance.

	Parameters
	----------
	events : Events|None
		The instance, or `None` when nobody listens.

	event : str
		Name of the event.
	'''

	if events is not None:
		events.trigger(event, *args, **kwargs)
