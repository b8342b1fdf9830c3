"""Letters, alphabets and words.

A word is a plain tuple of letters.  Symbolic letters are ``str`` tokens and
numeric letters are :class:`fractions.Fraction` values, so the two kinds never
compare equal.  Output values of variadic functions are either words (tuples)
or :class:`Opaque` tokens.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Tuple, Union

Letter = Union[str, Fraction]
Word = Tuple[Letter, ...]
EPS: Word = ()


class ConfigError(ValueError):
    """Raised for invalid alphabets, parameters or configuration documents."""


@dataclass(frozen=True)
class Opaque:
    """An output value outside X*."""

    token: str

    def __repr__(self) -> str:
        return f"Opaque({self.token!r})"


OutputValue = Union[Word, Opaque]


def is_word(value: OutputValue) -> bool:
    return isinstance(value, tuple)


def numeric(value) -> Fraction:
    """Build a numeric letter from an int, str ("1/2") or Fraction."""
    if isinstance(value, bool):
        raise ConfigError(f"not a rational: {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"not a rational: {value!r}") from exc


@dataclass(frozen=True)
class Alphabet:
    symbols: Tuple[str, ...] = ()
    numeric_samples: Tuple[Fraction, ...] = ()
    vowel_set: frozenset = frozenset()
    # lower -> upper; targets are never keys, so applying it twice is a no-op
    case_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(
            self, "numeric_samples", tuple(numeric(v) for v in self.numeric_samples)
        )
        object.__setattr__(self, "vowel_set", frozenset(self.vowel_set))
        object.__setattr__(self, "case_map", dict(self.case_map))
        if any(not isinstance(s, str) or not s for s in self.symbols):
            raise ConfigError("symbols must be nonempty strings")
        if len(set(self.symbols)) != len(self.symbols):
            raise ConfigError("duplicate symbols in alphabet")
        if len(set(self.numeric_samples)) != len(self.numeric_samples):
            raise ConfigError("duplicate numeric samples in alphabet")
        if not self.vowel_set <= set(self.symbols):
            raise ConfigError(f"vowels not in alphabet: {sorted(self.vowel_set - set(self.symbols))}")
        for k, v in self.case_map.items():
            if k not in self.symbols or v not in self.symbols:
                raise ConfigError(f"case_map entry {k!r}->{v!r} uses unknown symbols")
            if v in self.case_map and self.case_map[v] != v:
                raise ConfigError(f"case_map target {v!r} is itself remapped")
        ranks = {letter: i for i, letter in enumerate(self.letters)}
        object.__setattr__(self, "_ranks", ranks)

    def __hash__(self):
        return hash((self.symbols, self.numeric_samples, self.vowel_set,
                     tuple(sorted(self.case_map.items()))))

    @property
    def letters(self) -> Tuple[Letter, ...]:
        """All letters in the fixed total order: symbols first, then numerics."""
        return self.symbols + self.numeric_samples

    def letter_key(self, letter: Letter):
        rank = self._ranks.get(letter)
        if rank is not None:
            return (0, rank, 0, "")
        # letters produced by functions but not listed in the alphabet
        if isinstance(letter, Fraction):
            return (1, 1, letter, "")
        return (1, 0, 0, letter)

    def word_key(self, word: Word):
        """Shortlex sort key."""
        return (len(word), tuple(self.letter_key(c) for c in word))

    def restrict(self, letters: Sequence[Letter]) -> "Alphabet":
        keep = set(letters)
        syms = tuple(s for s in self.symbols if s in keep)
        return Alphabet(
            symbols=syms,
            numeric_samples=tuple(n for n in self.numeric_samples if n in keep),
            vowel_set=self.vowel_set & set(syms),
            case_map={k: v for k, v in self.case_map.items() if k in keep and v in keep},
        )


def iter_words(alphabet: Alphabet, max_len: int, min_len: int = 0) -> Iterator[Word]:
    letters = alphabet.letters
    if not letters:
        raise ConfigError("alphabet has no letters")
    if max_len < 0:
        raise ConfigError("max_len must be nonnegative")
    for n in range(max(min_len, 0), max_len + 1):
        # itertools.product yields each length lexicographically in input order
        yield from itertools.product(letters, repeat=n)


def enumerate_words(alphabet: Alphabet, max_len: int) -> list:
    """All words of length <= max_len in shortlex order."""
    return list(iter_words(alphabet, max_len))


def count_words(alphabet: Alphabet, max_len: int) -> int:
    k = len(alphabet.letters)
    return sum(k**n for n in range(max_len + 1))


def power(x: Word, n: int) -> Word:
    return tuple(x) * n


def concat_power(x: Word, y: Word, n: int) -> Word:
    """``x`` followed by ``n`` copies of ``y``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(x) + tuple(y) * n


def word(spec, alphabet: Alphabet | None = None) -> Word:
    """Parse a word from text.

    Tokens are whitespace separated when the text contains spaces
    (``"a 1/2 b"``), otherwise each character is one letter (``"aab"``).
    A token is numeric when the alphabet lists it as a numeric sample or,
    without an alphabet, when it parses as a rational.  ``""`` and ``"ε"`` are
    the empty word.
    """
    if isinstance(spec, tuple):
        return spec
    if isinstance(spec, list):
        return tuple(_letter(t, alphabet) for t in spec)
    text = str(spec).strip()
    if text in ("", "ε", "eps"):
        return EPS
    tokens = text.split() if " " in text else list(text)
    return tuple(_letter(t, alphabet) for t in tokens)


def _letter(token, alphabet: Alphabet | None) -> Letter:
    if isinstance(token, Fraction):
        return token
    if isinstance(token, int) and not isinstance(token, bool):
        return Fraction(token)
    token = str(token)
    if alphabet is not None and token in alphabet.symbols:
        return token
    try:
        return Fraction(token)
    except ValueError:
        return token


def render_letter(letter: Letter) -> str:
    return str(letter)


def render_word(w: Word) -> str:
    if not w:
        return "ε"
    parts = [render_letter(c) for c in w]
    if all(isinstance(c, str) and len(c) == 1 for c in w):
        return "".join(parts)
    return " ".join(parts)


def render_value(value: OutputValue) -> str:
    if isinstance(value, Opaque):
        return f"opaque:{value.token}"
    return render_word(value)
