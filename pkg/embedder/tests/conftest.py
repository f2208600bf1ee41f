"""Shared fixtures: a tiny randomly-initialized encoder saved to disk.

Model hosts are unreachable from the test environment, so the tests build
their own miniature BERT (fixed seed, 2 layers, 32-dimensional) and point
`--model` at the saved directory. Anything loadable by the transformers
auto classes works the same way.
"""

import json

import pytest
import torch
from tokenizers import Tokenizer
from tokenizers.models import WordPiece
from tokenizers.normalizers import Lowercase
from tokenizers.pre_tokenizers import Whitespace
from tokenizers.processors import TemplateProcessing
from transformers import BertConfig, BertModel, PreTrainedTokenizerFast
from transformers.utils import logging as hf_logging

WORDS = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "book", "a", "flight", "to", "boston", "cancel", "my", "order",
    "hello", "there", "now", "reserve", "trip", "the", "seat",
    "hotel", "room", "show", "me", "please", "##s", "##ing",
]


@pytest.fixture(scope="session")
def model_dir(tmp_path_factory):
    hf_logging.set_verbosity_error()
    hf_logging.disable_progress_bar()
    vocab = {word: index for index, word in enumerate(WORDS)}
    tok = Tokenizer(WordPiece(vocab, unk_token="[UNK]"))
    tok.normalizer = Lowercase()
    tok.pre_tokenizer = Whitespace()
    tok.post_processor = TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
    )
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_object=tok,
        unk_token="[UNK]", pad_token="[PAD]", cls_token="[CLS]",
        sep_token="[SEP]", mask_token="[MASK]",
    )
    torch.manual_seed(7)
    config = BertConfig(
        vocab_size=len(WORDS), hidden_size=32, num_hidden_layers=2,
        num_attention_heads=4, intermediate_size=64,
        max_position_embeddings=64,
    )
    model = BertModel(config)
    model.eval()
    target = tmp_path_factory.mktemp("tiny-encoder")
    model.save_pretrained(target)
    tokenizer.save_pretrained(target)
    return str(target)


def write_corpus(path, texts):
    """Write one original per text plus no candidates; ids run o0, o1, ..."""
    with open(path, "w", encoding="utf-8") as handle:
        for index, text in enumerate(texts):
            handle.write(json.dumps({
                "id": f"o{index}",
                "text": text,
                "label": "intent",
                "source_id": None,
            }) + "\n")
    return str(path)
