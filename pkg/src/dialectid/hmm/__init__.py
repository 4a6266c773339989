#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .model import NUM_STATES, SIL, PhoneHmm, HmmSet, transitionMatrix, triphoneName, parseTriphone, triphoneSequence
from .align import Segment, Alignment, viterbiChain, forcedAlign
from .train import TRAINING_EVENTS, DEFAULT_SCHEDULE, DEFAULT_ITERS_PER_STAGE, DEFAULT_MIN_COUNT, flatStart, trainEmbedded, splitSet, countTriphones, expandTriphones, triphoneUnits, monophoneUnits
