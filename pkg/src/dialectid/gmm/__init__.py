#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .model import GmmModel, logDensity, utteranceLoglik
from .em import EM_EVENTS, varianceFloor, emStep, emFit, splitMixtures, growMixture, trainGmm
from .classifier import classifyGmm, GmmClassifier
