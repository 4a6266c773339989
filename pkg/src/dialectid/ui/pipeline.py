#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .display import StatusDisplay
from ..utils import string

class PipelineUI(StatusDisplay):
	'''
	Display of the steps of a Pipeline: a status line for the models being trained, a progress bar for features extraction and identification.

	Parameters
	----------
	pipeline : Pipeline
		Instance of the Pipeline from which the events are triggered.

	stream : file-like object
		Where to draw.
	'''

	def __init__(self, pipeline, stream = None):
		super().__init__(stream)

		self._component = None

		listeners = {
			'features-start': self._featuresStart,
			'features-progress': self._featuresProgress,
			'features-end': self._progressEnd,
			'component-start': self._componentStart,
			'component-end': self._componentEnd,
			'em-stage': self._emStage,
			'em-iteration': self._emIteration,
			'hmm-stage': self._hmmStage,
			'hmm-iteration': self._hmmIteration,
			'cnn-epoch': self._cnnEpoch,
			'identify-start': self._identifyStart,
			'utterance-identified': self._utteranceIdentified,
			'identify-end': self._progressEnd
		}

		for event, listener in listeners.items():
			pipeline.events.addListener(event, listener)

	def _training(self, text):
		self.setStatus(f'Training {self._component}: {text}')

	def _featuresStart(self, split, total):
		self.setStatus(f'Extracting the features of {string.plural(total, "utterance", "utterances")} ({split})…')
		self.startProgress(total)

	def _featuresProgress(self, split, done):
		self.setProgress(done)

	def _progressEnd(self, *args):
		self.clear()

	def _componentStart(self, name):
		self._component = name
		self.setStatus(f'Training {name}…')

	def _componentEnd(self, name):
		self._component = None
		self.setStatus(f'{name} trained')

	def _emStage(self, size):
		self._training(string.plural(size, 'component', 'components'))

	def _emIteration(self, iteration, loglik):
		self._training(f'EM iteration {iteration}, log-likelihood {loglik:.2f}')

	def _hmmStage(self, stage, components):
		self._training(f'{string.plural(components, "gaussian", "gaussians")} per state')

	def _hmmIteration(self, stage, iteration, total, skipped):
		text = f'stage {stage + 1}, iteration {iteration}, log-likelihood {total:.2f}'

		if skipped:
			text += f' ({string.plural(skipped, "utterance", "utterances")} skipped)'

		self._training(text)

	def _cnnEpoch(self, epoch, loss, accuracy):
		self._training(f'epoch {epoch}, loss {loss:.4f}, accuracy {accuracy:.2%}')

	def _identifyStart(self, system, total):
		self.setStatus(f'Identifying {string.plural(total, "utterance", "utterances")} with {system}…')
		self.startProgress(total)

	def _utteranceIdentified(self, utt_id, outcome):
		if self.progress is not None:
			self.setProgress(delta = 1)
