#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json

from .atomicfile import AtomicFile
from .errors import *

def read(filename):
	'''
	Read a JSON file.

	Parameters
	----------
	filename : str
		Path to the JSON file to read.

	Returns
	-------
	obj : dict|list
		The object described in the JSON file.
	'''

	with open(filename, 'r', encoding = 'utf-8') as f:
		return json.load(f)

def write(obj, filename, *, sort_keys = False):
	'''
	Save an object into a JSON file, atomically.

	Parameters
	----------
	obj : dict|list
		Object to save.

	filename : str
		Path to the JSON file.

	sort_keys : bool
		`True` to sort the keys before writing the file.
	'''

	with AtomicFile(filename, 'w') as f:
		json.dump(obj, f, sort_keys = sort_keys, indent = '\t', separators = (',', ': '))
		f.write('\n')

def writeContainer(fmt, version, content, filename):
	'''
	Save a versioned container: a JSON object whose `format` and `version` keys identify the content.

	Parameters
	----------
	fmt : str
		Name of the format (e.g. `gmm`, `hmmset`).

	version : int
		Version of the format.

	content : dict
		The content to store along with the header.

	filename : str
		Path to the file.
	'''

	write({'format': fmt, 'version': version, **content}, filename)

def readContainer(fmt, version, filename):
	'''
	Read a versioned container and check its header.

	Parameters
	----------
	fmt : str
		Expected format name.

	version : int
		Expected version.

	filename : str
		Path to the file.

	Raises
	------
	ContainerFormatError
		The file does not hold the expected format/version.

	Returns
	-------
	content : dict
		The container content (header included).
	'''

	obj = read(filename)
	checkHeader(obj, fmt, version, filename)

	return obj

def checkHeader(obj, fmt, version, filename = '<memory>'):
	'''
	Check the header of a container already loaded.

	Raises
	------
	ContainerFormatError
		The header does not match.
	'''

	found_fmt = obj.get('format') if type(obj) is dict else None
	found_version = obj.get('version') if type(obj) is dict else None

	if found_fmt != fmt or found_version != version:
		raise ContainerFormatError(filename, f'{fmt} v{version}', f'{found_fmt} v{found_version}')
