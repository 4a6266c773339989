#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .inventory import DialectLabel, Membership, PhoneInventory
from .lexicon import UNIFIED, Lexicon, mergeLexicons
from .manifest import UtteranceRecord, loadManifest, writeManifest
from .pdict import RULE, MANUAL, Rule, applyRules, defaultRules, loadRules, saveRules, loadManualTable, saveManualTable, ParallelDictionary, spell, pronounce, buildParallelDictionary
from .split import splitSpeakerDisjoint
from .synth import SynthSpec, SynthWord, SynthCorpus, buildVocabulary, renderUtterance, directoryDigest, generateSynthetic
