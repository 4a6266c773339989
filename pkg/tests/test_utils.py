#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os

import pytest

from dialectid.cli import systems
from dialectid.utils import AtomicFile, Events, Registry, jsonfiles
from dialectid.utils.errors import ContainerFormatError, EventUnknownError, RegistryEntryNotFoundError, RegistryInvalidFilterRegexError
from dialectid.utils.events import maybeTrigger
from dialectid.utils.string import hash, objectDigest, plural

def test_events_listeners():
	events = Events(['a', 'b'])
	received = []

	def listener(*args, **kwargs):
		received.append((args, kwargs))

	events.addListener('a', listener)
	events.trigger('a', 1, x = 2)
	events.trigger('b')

	assert received == [((1,), {'x': 2})]

	events.removeListener('a', listener)
	events.trigger('a', 3)

	assert len(received) == 1

def test_events_unknown():
	events = Events(['a'])

	with pytest.raises(EventUnknownError):
		events.addListener('nope', print)

	with pytest.raises(EventUnknownError):
		events.trigger('nope')

def test_maybe_trigger_without_events():
	maybeTrigger(None, 'anything', 1)

def test_registry_from_module():
	registry = Registry(r'^system_(?P<name>[a-z0-9_]+)$')
	registry.loadFromModule(systems)

	assert registry.names == ['gmm', 'cnn', 'ppr_v1', 'ppr_v2', 'ppr_v3', 'plvcsr', 'upr1', 'upr2']
	assert registry.get('gmm') is systems.system_gmm

	with pytest.raises(RegistryEntryNotFoundError):
		registry.get('monophones')

def test_registry_regex_needs_name():
	with pytest.raises(RegistryInvalidFilterRegexError):
		Registry(r'^system_.*$')

def test_registry_call():
	registry = Registry()
	registry.set('double', lambda x: 2 * x)

	assert 'double' in registry
	assert registry.call('double', 21) == 42

def test_atomic_file_commit(tmp_path):
	target = tmp_path / 'out.txt'

	with AtomicFile(str(target)) as f:
		f.write('content')
		assert not(target.exists())

	assert target.read_text() == 'content'
	assert os.listdir(tmp_path) == ['out.txt']

def test_atomic_file_discard_keeps_previous(tmp_path):
	target = tmp_path / 'out.txt'
	target.write_text('previous')

	with pytest.raises(RuntimeError):
		with AtomicFile(str(target)) as f:
			f.write('partial')
			raise RuntimeError('interrupted')

	assert target.read_text() == 'previous'
	assert os.listdir(tmp_path) == ['out.txt']

def test_container_header(tmp_path):
	filename = str(tmp_path / 'model.json')
	jsonfiles.writeContainer('gmm', 1, {'weights': [1.0]}, filename)

	assert jsonfiles.readContainer('gmm', 1, filename)['weights'] == [1.0]

	with pytest.raises(ContainerFormatError):
		jsonfiles.readContainer('hmmset', 1, filename)

	with pytest.raises(ContainerFormatError):
		jsonfiles.readContainer('gmm', 2, filename)

def test_object_digest_ignores_key_order():
	assert objectDigest({'a': 1, 'b': [1, 2]}) == objectDigest({'b': [1, 2], 'a': 1})
	assert objectDigest({'a': 1}) != objectDigest({'a': 2})
	assert hash('abc') == hash(b'abc')

def test_plural():
	assert plural(1, 'word', 'words') == '1 word'
	assert plural(3, 'word', 'words') == '3 words'
	assert plural(0, 'word', 'words', add_n = False) == 'word'
