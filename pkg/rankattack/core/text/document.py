from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class Token:
    """
    A token of a document or query: the original text fragment and its normalized form.
    """

    surface: str
    norm: str

    def __post_init__(self):
        if not self.norm or any(c.isspace() for c in self.norm):
            raise ValueError(f"Invalid normalized token {self.norm!r}")

    @classmethod
    def of(cls, surface: str) -> "Token":
        return cls(surface, surface.lower())

    def __str__(self) -> str:
        return self.norm


@dataclass(frozen=True)
class Document:
    """
    A tokenized document. Token order is exactly the tokenizer's output order.
    """

    doc_id: str
    tokens: Tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def norms(self) -> Tuple[str, ...]:
        return tuple(token.norm for token in self.tokens)

    def text(self) -> str:
        return " ".join(self.norms())

    def with_tokens(self, tokens: Tuple[Token, ...]) -> "Document":
        return Document(self.doc_id, tuple(tokens))


@dataclass(frozen=True)
class Query:
    """
    A tokenized query. A query always has at least one token.
    """

    query_id: str
    tokens: Tuple[Token, ...]

    def __post_init__(self):
        if len(self.tokens) == 0:
            raise ValueError(f"Query {self.query_id} has no tokens")

    def __len__(self) -> int:
        return len(self.tokens)

    def norms(self) -> Tuple[str, ...]:
        return tuple(token.norm for token in self.tokens)

    def text(self) -> str:
        return " ".join(self.norms())
