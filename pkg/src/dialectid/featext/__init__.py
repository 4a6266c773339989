#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .audio import AudioBuffer, readWav, writeWav, trimSilence
from .mfcc import MfccConfig, FeatureMatrix, frameCount, dctBasis, melFilterbank, computeMfcc, appendDeltas, cepstralMeanSubtract, fixLength, computeTargetFrames, extractFeatures
from .archive import FeatureArchive
