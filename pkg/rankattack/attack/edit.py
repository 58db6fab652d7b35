from dataclasses import dataclass
from typing import Optional

from rankattack.core.text.document import Document, Token

INSERT = "insert"
SUBSTITUTE = "substitute"


@dataclass(frozen=True)
class Edit:
    """
    A single-word perturbation: the insertion of `inserted` before the token at
    `position` (position == |d| appends), or the substitution of the token `replaced`
    at `position` by `inserted`.
    """

    kind: str
    position: int
    inserted: Token
    replaced: Optional[Token] = None

    def __post_init__(self):
        if self.kind not in (INSERT, SUBSTITUTE):
            raise ValueError(f"Unknown edit kind {self.kind}")
        if self.position < 0:
            raise ValueError(f"Negative edit position {self.position}")
        if self.kind == SUBSTITUTE and self.replaced is None:
            raise ValueError("A substitution must record the replaced token")
        if self.kind == INSERT and self.replaced is not None:
            raise ValueError("An insertion does not replace any token")

    def apply(self, d: Document) -> Document:
        tokens = list(d.tokens)
        if self.kind == INSERT:
            if self.position > len(tokens):
                raise ValueError(f"Cannot insert at {self.position} in a document of {len(d)} tokens")
            tokens.insert(self.position, self.inserted)
        else:
            if self.position >= len(tokens):
                raise ValueError(
                    f"Cannot substitute at {self.position} in a document of {len(d)} tokens"
                )
            if tokens[self.position] != self.replaced:
                raise ValueError(f"Token at {self.position} is not {self.replaced}")
            tokens[self.position] = self.inserted
        return d.with_tokens(tuple(tokens))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "position": self.position,
            "inserted": self.inserted.norm,
            "replaced": None if self.replaced is None else self.replaced.surface,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Edit":
        replaced = data.get("replaced")
        return cls(
            kind=data["kind"],
            position=int(data["position"]),
            inserted=Token(data["inserted"], data["inserted"]),
            replaced=None if replaced is None else Token.of(replaced),
        )
