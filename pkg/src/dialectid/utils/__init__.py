#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .atomicfile import AtomicFile
from .events import Events
from .registry import Registry
