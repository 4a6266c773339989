#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import base64
import hashlib
import json

def hash(s):
	'''
	Hash a string, mostly to serve as a short identifier (config digests, corpus digests).

	Parameters
	----------
	s : str|bytes
		The string to hash.

	Returns
	-------
	hash : str
		The hash, URL-safe base64 without padding.
	'''

	if type(s) is str:
		s = s.encode('utf-8')

	digest = hashlib.sha256(s).digest()[:12]
	return base64.urlsafe_b64encode(digest).decode('ascii').rstrip('=')

def objectDigest(obj):
	'''
	Hash a JSON-serializable object, independently of the keys order.

	Parameters
	----------
	obj : dict|list
		The object.

	Returns
	-------
	hash : str
		The digest.
	'''

	return hash(json.dumps(obj, sort_keys = True, separators = (',', ':')))

def plural(n, single, several, *, add_n = True):
	'''
	Singular or plural form of a noun, depending on a count (`0` and `1` take the singular), preceded by the count unless `add_n` is `False`.
	'''

	noun = several if n > 1 else single
	return f'{n} {noun}' if add_n else noun
