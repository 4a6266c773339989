#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .config import SYSTEMS, DECODING_SYSTEMS, DEFAULTS, RunConfig, parseOverride
from .pipeline import PIPELINE_EVENTS, Pipeline, writeMeta
from .main import exitCode, buildParser, main
