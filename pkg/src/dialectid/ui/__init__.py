#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .progressbar import ProgressBar
from .display import StatusDisplay
from .pipeline import PipelineUI
