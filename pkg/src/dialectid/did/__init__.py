#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .decision import EXCLUDED, Verdict, Decision, BiasResult, WordSegment, writeDecisions, readDecisions
from .nasal import applyNasalizationRelabel, relabelWords, removeNasalization
from .bias import EXCLUDE, RETAIN, wordMembership, biasFromLabels, computeBias, uprRecognize, reconfirmWord
from .identifiers import FALLBACK, STANDALONE, PprVersion, Identifier, GmmIdentifier, CnnIdentifier, PprIdentifier, PlvcsrIdentifier, Upr1Identifier, Upr2Identifier, pprIdentify, plvcsrIdentify, upr1Identify, upr2Identify, cnnIdentify
from .evaluation import EVALUATION_EVENTS, Metrics, evaluateDecisions, identifyAll, evaluate, summaryReport
