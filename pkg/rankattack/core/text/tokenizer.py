from typing import List
import re

from rankattack.core.text.document import Token

# A maximal run of alphanumeric characters (underscore counts as a separator)
_FRAGMENT = re.compile(r"[^\W_]+")


def tokenize(text: str) -> List[Token]:
    """
    Lowercases and splits on every maximal run of non-alphanumeric characters.

    Empty fragments are dropped and the order of the fragments is preserved.
    Numerals are kept as tokens; there is no stemming nor stopwording at this layer.
    Splitting happens after lowercasing, so a character whose lowercase form is not
    alphanumeric (the dotted capital I) separates fragments too.

    >>> [str(t) for t in tokenize("BM25-based re-ranking")]
    ['bm25', 'based', 're', 'ranking']
    """
    tokens = []
    for match in _FRAGMENT.finditer(text):
        surface = match.group(0)
        lowered = surface.lower()
        norms = _FRAGMENT.findall(lowered)
        if norms == [lowered]:
            tokens.append(Token(surface, lowered))
        else:
            tokens.extend(Token(norm, norm) for norm in norms)
    return tokens
