"""
Words in the free group on named generators.

A word is a list of letters; generator i is letter 2i and its inverse is
letter 2i + 1. Accepted syntax: names separated by `*` or whitespace,
`^e` powers (e may be negative), `(...)` grouping, `[u,v]` = u⁻¹v⁻¹uv
and `1` for the empty word.
"""
import re

from .exceptions import InconsistentPresentation

TOKEN = re.compile(r'\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>-?\d+)|(?P<sym>[\^\*\[\],()]))')


def invert(word):
    return [letter ^ 1 for letter in reversed(word)]


def power(word, exponent):
    if exponent < 0:
        return invert(word) * (-exponent)
    return word * exponent


def commutator(u, v):
    return invert(u) + invert(v) + u + v


def tokenize(text):
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = TOKEN.match(text, position)
        if not match or match.end() == position:
            raise InconsistentPresentation('cannot parse word', word=text, position=position)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        position = match.end()
    return tokens


class WordParser:
    """Recursive-descent parser turning text into letter lists"""

    def __init__(self, names):
        self.index = {name: i for i, name in enumerate(names)}

    def parse(self, text):
        self.tokens = tokenize(text)
        self.position = 0
        word = self._word(stop=())
        if self.position != len(self.tokens):
            raise InconsistentPresentation('trailing symbols in word', word=text)
        return word

    def _peek(self):
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return (None, None)

    def _take(self, symbol=None):
        token = self._peek()
        if symbol is not None and token != ('sym', symbol):
            raise InconsistentPresentation(f'expected {symbol!r}', found=token[1])
        self.position += 1
        return token

    def _word(self, stop):
        word = []
        while True:
            kind, value = self._peek()
            if kind is None or (kind == 'sym' and value in stop):
                return word
            if (kind, value) == ('sym', '*'):
                self._take()
                continue
            word += self._factor()

    def _factor(self):
        base = self._atom()
        if self._peek() == ('sym', '^'):
            self._take()
            kind, value = self._take()
            if kind != 'int':
                raise InconsistentPresentation('exponent must be an integer', found=value)
            base = power(base, int(value))
        return base

    def _atom(self):
        kind, value = self._take()
        if kind == 'name':
            if value not in self.index:
                raise InconsistentPresentation('unknown generator', name=value)
            return [2 * self.index[value]]
        if kind == 'int':
            if int(value) != 1:
                raise InconsistentPresentation('only 1 may stand for the identity', found=value)
            return []
        if value == '(':
            inner = self._word(stop=(')',))
            self._take(')')
            return inner
        if value == '[':
            left = self._word(stop=(',',))
            self._take(',')
            right = self._word(stop=(']',))
            self._take(']')
            return commutator(left, right)
        raise InconsistentPresentation('unexpected symbol in word', found=value)


def parse_word(text, names):
    return WordParser(names).parse(text)
