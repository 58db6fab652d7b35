from .document import Token, Document, Query
from .tokenizer import tokenize
from .loaders import load_corpus, load_queries

__all__ = ["Token", "Document", "Query", "tokenize", "load_corpus", "load_queries"]
