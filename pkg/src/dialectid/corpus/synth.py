#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import dataclasses
import hashlib
import logging
import os

import numpy as np

from .errors import *
from .inventory import DialectLabel, PhoneInventory
from .lexicon import Lexicon
from .manifest import UtteranceRecord, writeManifest
from .pdict import applyRules, buildParallelDictionary, defaultRules, saveManualTable, saveRules, spell
from .split import splitSpeakerDisjoint
from ..featext.audio import AudioBuffer, writeWav
from ..featext.mfcc import hzToMel, melToHz
from ..utils import jsonfiles
from ..utils.string import hash as shortHash

logger = logging.getLogger(__name__)

SYNTH_FORMAT = 'synth-corpus'
SYNTH_VERSION = 1

NUM_STATES = 3

# word categories
SHARED = 'shared'
REGULAR = 'regular'
IRREGULAR = 'irregular'
INAPPROPRIATE = 'inappropriate'

@dataclasses.dataclass(frozen = True)
class SynthSpec():
	'''
	Description of a synthetic two-dialect corpus.

	Vocabularies: each dialect has `words_per_dialect` words. Some are shared (same word, same pronunciation), the others come in LT/CT pairs:
		- regular: the conversion rules turn the LT pronunciation into the CT one,
		- irregular: the rules leave the LT word unchanged but CT uses another word,
		- inappropriate: the rules produce a word CT does not use, the right one being given by the manual table.

	Acoustics: every phone has one spectral envelope per state (a few formant-like bumps on the mel scale). CT shifts the bumps up by `dialect_shift` and speaks its vowels faster; each speaker adds its own shift and gain.
	'''

	words_per_dialect: int = 20
	utterances_per_dialect: int = 50
	speakers_per_dialect: int = 5
	words_per_utterance: dict = dataclasses.field(default_factory = lambda: {'LT': (4, 7), 'CT': (2, 4)})
	syllables_per_word: tuple = (2, 3)
	shared_fraction: float = 0.2
	irregular_fraction: float = 0.1
	inappropriate_fraction: float = 0.1
	nasal_ending_probability: float = 0.7
	consonant_frames: tuple = (2, 3)
	vowel_frames: dict = dataclasses.field(default_factory = lambda: {'LT': (3, 5), 'CT': (2, 3)})
	edge_silence_frames: tuple = (5, 15)
	dialect_shift: float = 0.04
	speaker_shift: float = 0.02
	speaker_gain_db: float = 3.0
	formants_per_state: int = 3
	formant_jitter: float = 25.0
	train_fraction: float = 0.7
	sample_rate: int = 16000
	frame_shift: int = 160
	window_length: int = 400
	require_nasalized: bool = True
	inventory: dict = None

	def __post_init__(self):
		if self.words_per_dialect < 4:
			raise SynthSpecError('at least 4 words per dialect are needed')

		if self.speakers_per_dialect < 2:
			raise SynthSpecError('at least 2 speakers per dialect are needed')

		if self.utterances_per_dialect < self.speakers_per_dialect:
			raise SynthSpecError('every speaker needs at least one utterance')

		if self.shared_fraction + self.irregular_fraction + self.inappropriate_fraction >= 1:
			raise SynthSpecError('no room left for regular words')

		for bounds in [self.syllables_per_word, self.consonant_frames, self.edge_silence_frames, *self.vowel_frames.values(), *self.words_per_utterance.values()]:
			if len(bounds) != 2 or bounds[0] < 1 or bounds[0] > bounds[1]:
				raise SynthSpecError(f'invalid range {bounds}')

		if self.window_length < self.frame_shift:
			raise SynthSpecError('the window must cover the frame shift')

	def phoneInventory(self):
		'''
		The inventory of the corpus (the default one if none is given).

		Raises
		------
		SynthSpecError
			The inventory has no nasalized class while one is required, or lacks the phones the rules need.
		'''

		inventory = PhoneInventory.fromDict(self.inventory) if self.inventory else PhoneInventory.default()

		if self.require_nasalized and inventory.nasalized_symbol is None:
			raise SynthSpecError('the inventory has no nasalized class')

		if not(inventory.vowels) or not(inventory.nasals) or not('u' in inventory):
			raise SynthSpecError('the inventory needs vowels (with `u`) and nasal consonants')

		return inventory

	def toDict(self):
		return {k: (list(v) if type(v) is tuple else v) for k, v in dataclasses.asdict(self).items()}

	@classmethod
	def fromDict(cls, obj):
		'''
		Build a spec from a dictionary; missing keys take their default value.

		Raises
		------
		SynthSpecError
			Unknown keys or invalid values.
		'''

		fields = {f.name for f in dataclasses.fields(cls)}
		unknown = sorted(set(obj) - fields)

		if unknown:
			raise SynthSpecError(f'unknown settings: {", ".join(unknown)}')

		values = {}

		for key, value in obj.items():
			if type(value) is list:
				value = tuple(value)

			elif type(value) is dict and key != 'inventory':
				value = {k: tuple(v) for k, v in value.items()}

			values[key] = value

		return cls(**values)

	@classmethod
	def load(cls, filename):
		return cls.fromDict(jsonfiles.read(filename))

@dataclasses.dataclass
class SynthWord():
	'''
	A vocabulary word: its spelling, its pronunciation and the category of its LT/CT pair.
	'''

	word: str
	phones: tuple
	category: str

@dataclasses.dataclass
class SynthCorpus():
	'''
	What the generator wrote.
	'''

	directory: str
	records: list
	lexicons: dict
	inventory: PhoneInventory
	rules: list
	manual: list
	pdict: object
	train: list
	test: list
	digest: str

	@property
	def manifest(self):
		return os.path.join(self.directory, 'manifest.tsv')

	def path(self, name):
		return os.path.join(self.directory, name)

class _Vocabulary():
	'''
	Draws word pronunciations, keeping spellings unique and unambiguous.
	'''

	def __init__(self, inventory, rng, syllables):
		self._inventory = inventory
		self._rng = rng
		self._syllables = syllables

		self._vowels = [p for p in inventory if inventory.isVowel(p)]
		self._nasals = [p for p in inventory if inventory.isNasal(p)]
		self._onsets = [p for p in inventory if inventory.isConsonant(p) and p != 'zh']
		self._codas = [p for p in self._onsets if not(inventory.isNasal(p))]

		self._spellings = set()

	def _pick(self, phones):
		return phones[self._rng.integers(len(phones))]

	def _base(self):
		n = self._rng.integers(self._syllables[0], self._syllables[1] + 1)
		phones = []

		for _ in range(n):
			phones += [self._pick(self._onsets), self._pick(self._vowels)]

		return phones

	def draw(self, ending):
		'''
		A new pronunciation.

		Parameters
		----------
		ending : str
			`vowel` (no `zh`), `nasal` (vowel + nasal consonant), `consonant` (final non-nasal consonant), `zh` (vowel-final, with a `zh` onset) or `nasalized` (final nasalized vowel).
		'''

		for _ in range(1000):
			phones = self._base()

			if ending == 'nasal':
				phones.append(self._pick(self._nasals))

			elif ending == 'consonant':
				phones.append(self._pick(self._codas))

			elif ending == 'zh':
				phones[2 * self._rng.integers(len(phones) // 2)] = 'zh'

			elif ending == 'nasalized':
				phones[-1] = self._inventory.nasalized_symbol

			if self.reserve(phones):
				return tuple(phones)

		raise SynthSpecError('cannot draw enough distinct words, increase the syllables per word')

	def reserve(self, phones):
		'''
		Claim the spelling of a pronunciation.

		Returns
		-------
		ok : bool
			`False` if the spelling is taken or does not segment back into the same phones.
		'''

		word = spell(phones)

		if word in self._spellings:
			return False

		try:
			if self._inventory.segment(word) != list(phones):
				return False

		except SpellingError:
			return False

		self._spellings.add(word)
		return True

def _categoryCounts(spec):
	n = spec.words_per_dialect
	shared = max(1, round(spec.shared_fraction * n))
	irregular = max(1, round(spec.irregular_fraction * n))
	inappropriate = max(1, round(spec.inappropriate_fraction * n))

	return {SHARED: shared, IRREGULAR: irregular, INAPPROPRIATE: inappropriate, REGULAR: n - shared - irregular - inappropriate}

def buildVocabulary(spec, inventory, rules, rng):
	'''
	Draw the LT and CT vocabularies and their manual conversion table.

	Returns
	-------
	lt : list
		LT SynthWord instances.

	ct : list
		CT SynthWord instances.

	manual : list
		(src, dst) manual pairs: LT → CT for irregular and inappropriate words, then CT → LT for every paired word.
	'''

	vocab = _Vocabulary(inventory, rng, spec.syllables_per_word)
	counts = _categoryCounts(spec)
	has_nasalized = inventory.nasalized_symbol is not None

	lt, ct, forward, backward = [], [], [], []

	def ctEnding():
		return 'nasalized' if has_nasalized and rng.random() < spec.nasal_ending_probability else 'vowel'

	for _ in range(counts[SHARED]):
		phones = vocab.draw('vowel')
		lt.append(SynthWord(spell(phones), phones, SHARED))
		ct.append(SynthWord(spell(phones), phones, SHARED))

	for _ in range(counts[REGULAR]):
		for _ in range(1000):
			if has_nasalized and rng.random() < spec.nasal_ending_probability:
				ending = 'nasal'

			else:
				ending = 'consonant' if rng.random() < 0.5 else 'zh'

			lt_phones = vocab.draw(ending)
			ct_phones = tuple(applyRules(rules, lt_phones))

			if ct_phones != lt_phones and vocab.reserve(ct_phones):
				break

		else:
			raise SynthSpecError('cannot draw enough regular words')

		lt.append(SynthWord(spell(lt_phones), lt_phones, REGULAR))
		ct.append(SynthWord(spell(ct_phones), ct_phones, REGULAR))
		backward.append((spell(ct_phones), spell(lt_phones)))

	for category, lt_ending in [(IRREGULAR, 'vowel'), (INAPPROPRIATE, 'consonant')]:
		for _ in range(counts[category]):
			lt_phones = vocab.draw(lt_ending)
			ct_phones = vocab.draw(ctEnding())

			lt.append(SynthWord(spell(lt_phones), lt_phones, category))
			ct.append(SynthWord(spell(ct_phones), ct_phones, category))

			forward.append((spell(lt_phones), spell(ct_phones)))
			backward.append((spell(ct_phones), spell(lt_phones)))

	return lt, ct, forward + backward

class _Voice():
	'''
	Spectral envelopes of the phone states, shared by every speaker.
	'''

	def __init__(self, inventory, spec, rng):
		self._spec = spec
		self._nfft = 1 << int(np.ceil(np.log2(spec.window_length)))

		freqs = np.fft.rfftfreq(self._nfft, 1.0 / spec.sample_rate)
		self._bin_mels = hzToMel(freqs)

		low, high = hzToMel(150.0), hzToMel(0.45 * spec.sample_rate)
		self._envelopes = {}

		for phone in inventory:
			states = []

			for _ in range(NUM_STATES):
				centers = np.sort(rng.uniform(low, high, size = spec.formants_per_state))
				widths = rng.uniform(80.0, 250.0, size = spec.formants_per_state)
				gains = rng.uniform(15.0, 35.0, size = spec.formants_per_state)
				tilt = rng.uniform(-15.0, 0.0)
				states.append((centers, widths, gains, tilt))

			self._envelopes[phone] = states

		self._level = {phone: (0.0 if inventory.isVowel(phone) or phone in inventory.nasalized_class else -6.0) for phone in inventory}

	@property
	def nfft(self):
		return self._nfft

	def envelope(self, phone, state, warp, rng):
		'''
		Magnitude of one frame, formant bumps warped by `warp` and jittered.
		'''

		centers, widths, gains, tilt = self._envelopes[phone][state]
		centers = centers * warp + rng.normal(0.0, self._spec.formant_jitter, size = len(centers))
		gains = gains + rng.normal(0.0, 1.0, size = len(gains))

		db = tilt * self._bin_mels / self._bin_mels[-1] + self._level[phone]
		db = db + np.sum(gains[:, np.newaxis] * np.exp(-0.5 * ((self._bin_mels[np.newaxis] - centers[:, np.newaxis]) / widths[:, np.newaxis]) ** 2), axis = 0)

		return 10.0 ** (db / 20.0)

def renderUtterance(frames, voice, spec, rng, *, warp = 1.0, gain_db = 0.0):
	'''
	Render a sequence of phone states into a waveform: every frame is a noise-excited window shaped by the state envelope, overlap-added every `frame_shift` samples.

	Parameters
	----------
	frames : list
		(phone, state) per frame, `None` for silence.

	voice : _Voice
		Envelopes.

	spec : SynthSpec
		Rendering settings.

	rng : numpy.random.Generator
		Generator of the excitation.

	warp : float
		Multiplicative shift of the formants (dialect and speaker).

	gain_db : float
		Speaker gain.

	Returns
	-------
	audio : AudioBuffer
		The waveform, peak at -6 dB (plus the gain).
	'''

	hop, length = spec.frame_shift, spec.window_length
	window = np.hanning(length)
	samples = np.zeros(hop * (len(frames) - 1) + length)

	for t, frame in enumerate(frames):
		spectrum = rng.normal(size = voice.nfft // 2 + 1) + 1j * rng.normal(size = voice.nfft // 2 + 1)

		if frame is None:
			spectrum *= 1e-4

		else:
			spectrum *= voice.envelope(frame[0], frame[1], warp, rng)

		samples[t*hop:t*hop+length] += np.fft.irfft(spectrum, n = voice.nfft)[:length] * window

	samples *= 0.5 * 10.0 ** (gain_db / 20.0) / max(np.max(np.abs(samples)), np.finfo(float).tiny)

	return AudioBuffer(np.clip(samples, -1.0, 1.0), spec.sample_rate)

def stateFrames(phones, dialect, inventory, spec, rng):
	'''
	Frame-level state sequence of a pronunciation; CT vowels are shorter.
	'''

	frames = []

	for phone in phones:
		vowel = inventory.isVowel(phone) or phone in inventory.nasalized_class
		low, high = spec.vowel_frames[dialect.value] if vowel else spec.consonant_frames

		for state in range(NUM_STATES):
			frames += [(phone, state)] * int(rng.integers(low, high + 1))

	return frames

def directoryDigest(directory):
	'''
	Digest of every file under a folder (names and contents), in sorted order.
	'''

	h = hashlib.sha256()

	for root, dirs, files in os.walk(directory):
		dirs.sort()

		for name in sorted(files):
			path = os.path.join(root, name)
			h.update(os.path.relpath(path, directory).encode('utf-8') + b'\0')

			with open(path, 'rb') as f:
				h.update(f.read())

	return shortHash(h.digest())

def generateSynthetic(spec, seed, directory):
	'''
	Generate a synthetic corpus.

	Written into `directory`:
		- `audio/<utt_id>.wav`, 16-bit mono,
		- `manifest.tsv` (with transcripts), `train.tsv` and `test.tsv` (speaker-disjoint split),
		- `lexicon_lt.txt`, `lexicon_ct.txt`, `inventory.json`,
		- `rules.tsv`, `manual.tsv` and the resulting `parallel.txt`,
		- `synth.json`: the spec, the seed and the category of each word.

	Parameters
	----------
	spec : SynthSpec
		What to generate.

	seed : int
		Seed. Identical (spec, seed) give identical files.

	directory : str
		Output folder, created if needed.

	Raises
	------
	SynthSpecError
		The spec cannot be honoured.

	Returns
	-------
	corpus : SynthCorpus
		Description of the written corpus.
	'''

	inventory = spec.phoneInventory()
	rules = defaultRules(inventory)
	rng = np.random.default_rng(seed)

	lt_words, ct_words, manual = buildVocabulary(spec, inventory, rules, rng)
	words = {DialectLabel.LT: lt_words, DialectLabel.CT: ct_words}

	lexicons = {d: Lexicon({w.word: [w.phones] for w in words[d]}, dialect_tag = d, inventory = inventory) for d in DialectLabel}

	voice = _Voice(inventory, spec, rng)

	os.makedirs(os.path.join(directory, 'audio'), exist_ok = True)
	records = []
	durations = {}

	for dialect in DialectLabel:
		vocabulary = words[dialect]
		dialect_warp = 1.0 + (spec.dialect_shift if dialect == DialectLabel.CT else 0.0)
		low, high = spec.words_per_utterance[dialect.value]

		speakers = []
		for k in range(spec.speakers_per_dialect):
			speakers.append((f'{dialect.value.lower()}{k:02d}', dialect_warp * (1.0 + rng.uniform(-spec.speaker_shift, spec.speaker_shift)), rng.uniform(-spec.speaker_gain_db, spec.speaker_gain_db)))

		for n in range(spec.utterances_per_dialect):
			speaker_id, warp, gain_db = speakers[n % len(speakers)]
			utt_id = f'{speaker_id}_{n:04d}'

			transcript = tuple(vocabulary[i].word for i in rng.integers(len(vocabulary), size = int(rng.integers(low, high + 1))))

			frames = [None] * int(rng.integers(spec.edge_silence_frames[0], spec.edge_silence_frames[1] + 1))
			for word in transcript:
				frames += stateFrames(lexicons[dialect].pronunciations(word)[0], dialect, inventory, spec, rng)
			frames += [None] * int(rng.integers(spec.edge_silence_frames[0], spec.edge_silence_frames[1] + 1))

			audio = renderUtterance(frames, voice, spec, rng, warp = warp, gain_db = gain_db)
			audio_path = os.path.join('audio', f'{utt_id}.wav')
			writeWav(audio, os.path.join(directory, audio_path))

			records.append(UtteranceRecord(utt_id, audio_path, dialect, speaker_id, transcript))
			durations[utt_id] = audio.duration

		logger.debug('%s: %d utterances from %d speakers', dialect.value, spec.utterances_per_dialect, len(speakers))

	train, test = splitSpeakerDisjoint(records, spec.train_fraction, seed, durations = durations)

	writeManifest(records, os.path.join(directory, 'manifest.tsv'))
	writeManifest(train, os.path.join(directory, 'train.tsv'))
	writeManifest(test, os.path.join(directory, 'test.tsv'))

	lexicons[DialectLabel.LT].save(os.path.join(directory, 'lexicon_lt.txt'))
	lexicons[DialectLabel.CT].save(os.path.join(directory, 'lexicon_ct.txt'))
	inventory.save(os.path.join(directory, 'inventory.json'))

	saveRules(rules, os.path.join(directory, 'rules.tsv'))
	saveManualTable(manual, os.path.join(directory, 'manual.tsv'))

	pdict = buildParallelDictionary(rules, manual, lexicons[DialectLabel.LT], lexicons[DialectLabel.CT])
	pdict.save(os.path.join(directory, 'parallel.txt'))

	jsonfiles.writeContainer(SYNTH_FORMAT, SYNTH_VERSION, {
		'seed': seed,
		'spec': spec.toDict(),
		'categories': {d.value: {w.word: w.category for w in words[d]} for d in DialectLabel}
	}, os.path.join(directory, 'synth.json'))

	digest = directoryDigest(directory)
	logger.info('synthetic corpus written in %s (%d utterances, digest %s)', directory, len(records), digest)

	return SynthCorpus(directory, records, lexicons, inventory, rules, manual, pdict, train, test, digest)
