#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .errors import *
from .layers import Layer, Conv1D, MaxPool1D, Dropout, Flatten, Dense, softmax, layerFromConfig
from .model import CnnModel, buildDialectCnn, INPUT_FRAMES, INPUT_CHANNELS
from .train import TRAINING_EVENTS, classIndex, stackDataset, train, gradientCheck
