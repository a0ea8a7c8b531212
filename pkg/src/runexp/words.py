"""Words over explicit alphabets, morphisms, and their file formats.

Words and morphisms are immutable values: they can be shared freely
between threads or processes. Positions in diagnostics are 1-based.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

__all__ = [
    "Word",
    "Morphism",
    "word_from_text",
    "apply_morphism",
    "iterate_morphism",
    "power",
    "read_word_file",
    "write_word_file",
    "parse_morphism_rules",
    "load_morphism_file",
]

# Symbols are single printable ASCII characters (0x20..0x7E).
_PRINTABLE = frozenset(chr(c) for c in range(0x20, 0x7F))


def _as_alphabet(symbols: Iterable[str]) -> frozenset[str]:
    alpha = frozenset(symbols)
    for sym in alpha:
        if len(sym) != 1 or sym not in _PRINTABLE:
            raise ValueError(
                f"alphabet symbols must be single printable ASCII characters, got {sym!r}"
            )
    return alpha


class Word:
    """An immutable word over an explicit alphabet.

    The letter sequence is stored as ASCII bytes. Equality and hashing
    consider both the letters and the alphabet.
    """

    __slots__ = ("data", "alphabet")

    data: bytes
    alphabet: frozenset[str]

    def __init__(self, data: bytes | str, alphabet: Iterable[str]):
        if isinstance(data, str):
            data = data.encode("ascii")
        alpha = _as_alphabet(alphabet)
        allowed = {ord(sym) for sym in alpha}
        if not set(data) <= allowed:
            # Locate the first offender only on the failure path.
            for pos, byte in enumerate(data, start=1):
                if byte not in allowed:
                    raise ValueError(
                        f"letter {chr(byte)!r} at position {pos} is not in the alphabet "
                        f"{{{', '.join(sorted(alpha))}}}"
                    )
        object.__setattr__(self, "data", bytes(data))
        object.__setattr__(self, "alphabet", alpha)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.data)

    @property
    def text(self) -> str:
        return self.data.decode("ascii")

    @property
    def letters(self) -> str:
        """The letter sequence as a plain string."""
        return self.text

    def factor(self, i: int, j: int) -> "Word":
        """Return the factor at 1-based inclusive positions ``i..j``."""
        if not (1 <= i and j <= len(self.data) and i <= j + 1):
            raise ValueError(f"factor positions [{i}..{j}] out of range for length {len(self.data)}")
        return Word(self.data[i - 1 : j], self.alphabet)

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.data + other.data, self.alphabet | other.alphabet)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.data == other.data and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return hash((self.data, self.alphabet))

    def __repr__(self) -> str:
        shown = self.text if len(self.data) <= 40 else self.text[:37] + "..."
        return f"Word({shown!r}, n={len(self.data)})"


class Morphism:
    """A letter-to-word substitution map, extended to words by concatenation.

    Every source symbol has exactly one rule and every image is nonempty.
    """

    __slots__ = ("rules", "source_alphabet", "target_alphabet", "_table")

    def __init__(self, rules: Mapping[str, str]):
        if not rules:
            raise ValueError("a morphism needs at least one rule")
        clean: dict[str, str] = {}
        target: set[str] = set()
        for sym, image in rules.items():
            if len(sym) != 1 or sym not in _PRINTABLE:
                raise ValueError(f"rule source must be a single printable ASCII symbol, got {sym!r}")
            if not image:
                raise ValueError(f"rule for {sym!r} has an empty image")
            for ch in image:
                if ch not in _PRINTABLE:
                    raise ValueError(f"rule for {sym!r} contains non-ASCII letter {ch!r}")
            clean[sym] = image
            target.update(image)
        table: list[bytes | None] = [None] * 256
        for sym, image in clean.items():
            table[ord(sym)] = image.encode("ascii")
        object.__setattr__(self, "rules", dict(clean))
        object.__setattr__(self, "source_alphabet", frozenset(clean))
        object.__setattr__(self, "target_alphabet", frozenset(target))
        object.__setattr__(self, "_table", table)

    def __setattr__(self, name, value):
        raise AttributeError("Morphism is immutable")

    def image_of(self, sym: str) -> str:
        try:
            return self.rules[sym]
        except KeyError:
            raise ValueError(f"no rule for letter {sym!r}") from None

    def is_endomorphism(self) -> bool:
        """True when every image stays inside the source alphabet."""
        return self.target_alphabet <= self.source_alphabet

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.rules == other.rules

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.rules.items())))

    def __repr__(self) -> str:
        rules = ", ".join(f"{s}->{img}" for s, img in sorted(self.rules.items()))
        return f"Morphism({rules})"


def word_from_text(text: str, alphabet: Iterable[str]) -> Word:
    """Build a Word from ``text``, rejecting letters outside ``alphabet``.

    >>> len(word_from_text("abaab", {"a", "b"}))
    5
    """
    return Word(text, alphabet)


def apply_morphism(m: Morphism, w: Word) -> Word:
    """Apply ``m`` letterwise and concatenate the images."""
    missing = set(w.data) - {ord(s) for s in m.source_alphabet}
    if missing:
        sym = chr(min(missing))
        raise ValueError(f"no rule for letter {sym!r}")
    table = m._table
    data = b"".join(map(table.__getitem__, w.data))
    return Word(data, m.target_alphabet)


def iterate_morphism(m: Morphism, seed: Word, k: int) -> Word:
    """Apply ``m`` to ``seed`` ``k`` times; ``k=0`` returns the seed unchanged.

    Requires images to stay inside the source alphabet so that iteration
    is well defined.
    """
    if k < 0:
        raise ValueError(f"iteration count must be >= 0, got {k}")
    if not m.is_endomorphism():
        extra = "".join(sorted(m.target_alphabet - m.source_alphabet))
        raise ValueError(f"morphism is not iterable: image letters {extra!r} have no rules")
    if not seed.alphabet <= m.source_alphabet:
        extra = "".join(sorted(seed.alphabet - m.source_alphabet))
        raise ValueError(f"seed alphabet letters {extra!r} have no rules")
    w = seed
    for _ in range(k):
        w = apply_morphism(m, w)
    return w


def power(w: Word, k: int) -> Word:
    """Concatenate ``k`` copies of ``w``; ``k`` must be at least 1."""
    if k < 1:
        raise ValueError(f"power exponent must be >= 1, got {k}")
    return Word(w.data * k, w.alphabet)


def read_word_file(path, alphabet: Iterable[str] | None = None) -> Word:
    """Read a word from a plain-text file.

    A single trailing newline is ignored; any other whitespace is an
    error. When ``alphabet`` is omitted it is inferred from the content.
    """
    with open(path, "rb") as f:
        raw = f.read()
    if raw.endswith(b"\n"):
        raw = raw[:-1]
    for pos, byte in enumerate(raw, start=1):
        if not (0x21 <= byte <= 0x7E):
            raise ValueError(
                f"{path}: byte {byte:#04x} at position {pos} is not allowed in a word file"
            )
    if alphabet is None:
        alphabet = {chr(b) for b in set(raw)}
    return Word(raw, alphabet)


def write_word_file(w: Word, path) -> None:
    with open(path, "wb") as f:
        f.write(w.data)
        f.write(b"\n")


def parse_rule_line(line: str) -> tuple[str, str]:
    """Parse one ``X -> image`` rule line."""
    if "->" not in line:
        raise ValueError(f"expected 'X -> image', got {line!r}")
    left, right = line.split("->", 1)
    sym = left.strip()
    image = right.strip()
    if len(sym) != 1:
        raise ValueError(f"rule source must be a single symbol, got {sym!r}")
    if not image:
        raise ValueError(f"rule for {sym!r} has an empty image")
    return sym, image


def parse_morphism_rules(lines: Iterable[str], *, origin: str = "<input>") -> Morphism:
    """Parse line-oriented ``X -> image`` rules into a Morphism.

    Blank lines and lines starting with ``#`` are skipped. Errors carry
    the 1-based line number.
    """
    rules: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            sym, image = parse_rule_line(stripped)
        except ValueError as exc:
            raise ValueError(f"{origin}: line {lineno}: {exc}") from None
        if sym in rules:
            raise ValueError(f"{origin}: line {lineno}: duplicate rule for {sym!r}")
        rules[sym] = image
    if not rules:
        raise ValueError(f"{origin}: no rules found")
    return Morphism(rules)


def load_morphism_file(path) -> Morphism:
    with open(path, "r", encoding="ascii") as f:
        return parse_morphism_rules(f, origin=str(path))


def _iter_letters(w: Word) -> Iterator[str]:
    return iter(w.text)
