"""Export contextual token embeddings for a paraphrase corpus.

Reads the corpus JSONL format (id, text, label, source_id), runs every
text through a pretrained transformer encoder, and writes the embedding
JSONL format the ranking package consumes: one line per record carrying
the encoder's own subword tokens and one hidden-state vector per token.
The two packages share nothing but these file formats.
"""

from .encode import EmbedError, EmbedJob, embed_corpus, read_corpus

__version__ = "0.1.0"

__all__ = ["EmbedError", "EmbedJob", "embed_corpus", "read_corpus", "__version__"]
