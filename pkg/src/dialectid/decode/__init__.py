#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .lm import BOS, EOS, PhoneLM, estimateBigram
from .graph import GraphKind, GraphNode, Arc, LoopBack, DecodingGraph, buildPhoneLoop, buildWordGraph, buildLinearGraph
from .viterbi import PHONE, WORD, DecodedUnit, DecodeResult, CompiledGraph, viterbiDecode, formatDecodeResult, parseDecodeResult, writeDecodes, readDecodes
