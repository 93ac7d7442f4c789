"""tablekit: table structure recognition at desk scale.

An image-to-sequence transformer over a 32-token HTML structural grammar,
with a VQ-VAE visual tokenizer, masked-image-modeling pre-training for the
visual encoder, TEDS evaluation, and a deterministic synthetic table
generator so the whole pipeline runs without external datasets.
"""

from .grammar import (
    COMPLEX,
    EOS,
    PAD,
    SIMPLE,
    SOS,
    UNK,
    VOCAB,
    VOCAB_SIZE,
    TableNode,
    Vocabulary,
    build_vocab,
    classify,
    detokenize,
    frame,
    parse_tree,
    tokenize,
    unframe,
)
from .teds import TedsReport, evaluate_corpus, teds, tree_edit_distance

__version__ = "0.1.0"

__all__ = [
    "COMPLEX",
    "EOS",
    "PAD",
    "SIMPLE",
    "SOS",
    "UNK",
    "VOCAB",
    "VOCAB_SIZE",
    "TableNode",
    "TedsReport",
    "Vocabulary",
    "build_vocab",
    "classify",
    "detokenize",
    "evaluate_corpus",
    "frame",
    "parse_tree",
    "teds",
    "tokenize",
    "tree_edit_distance",
    "unframe",
    "__version__",
]
