"""Command-line behaviour: exit codes, output formats, stream separation."""

import json

import pytest

from rankaug import semantic
from rankaug.cli import main
from rankaug.corpus import load_corpus

Provider = semantic.TestEmbedderProvider

CORPUS = """\
{"id": "o1", "text": "book a flight to boston", "label": "booking", "source_id": null}
{"id": "o1c0", "text": "book a flight to boston now", "label": "booking", "source_id": "o1"}
{"id": "o1c1", "text": "reserve a flight to boston", "label": "booking", "source_id": "o1"}
{"id": "o1c2", "text": "book a trip to boston", "label": "booking", "source_id": "o1"}
{"id": "o2", "text": "cancel my order", "label": "cancel", "source_id": null}
{"id": "o2c0", "text": "cancel the order", "label": "cancel", "source_id": "o2"}
{"id": "o2c1", "text": "drop my order", "label": "cancel", "source_id": "o2"}
{"id": "u1", "text": "hello there", "label": "chitchat", "source_id": null}
"""


@pytest.fixture
def corpus_path(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text(CORPUS, encoding="utf-8")
    return str(path)


CARD_KEYS = [
    "id", "original_id", "semantic_score", "diversity_score",
    "semantic_rank", "diversity_rank", "fused_rank",
]


class TestScore:
    def test_one_card_per_candidate(self, corpus_path, capsys):
        assert main(["score", "--input", corpus_path, "--test-embedder-dim", "8"]) == 0
        out, err = capsys.readouterr()
        lines = out.splitlines()
        assert len(lines) == 5
        cards = [json.loads(line) for line in lines]
        assert [c["id"] for c in cards] == ["o1c0", "o1c1", "o1c2", "o2c0", "o2c1"]
        assert all(c["original_id"] in ("o1", "o2") for c in cards)
        assert err == "scored 5 candidates in 2 groups\n"

    def test_key_order_and_sorted_baselines(self, corpus_path, capsys):
        main(["score", "--input", corpus_path, "--test-embedder-dim", "8"])
        out, _ = capsys.readouterr()
        card = json.loads(out.splitlines()[0])
        assert list(card) == CARD_KEYS + ["baselines"]
        assert list(card["baselines"]) == sorted(card["baselines"])
        assert set(card["baselines"]) == {
            "bertscore_f1", "bleu", "lev_char", "lev_word_norm", "meteor", "rouge_l",
        }

    def test_output_flag_leaves_stdout_empty(self, corpus_path, capsys, tmp_path):
        dest = tmp_path / "cards.jsonl"
        assert main([
            "score", "--input", corpus_path,
            "--test-embedder-dim", "8", "--output", str(dest),
        ]) == 0
        out, err = capsys.readouterr()
        assert out == ""
        assert err.startswith("scored")
        assert len(dest.read_text(encoding="utf-8").splitlines()) == 5

    def test_byte_identical_across_runs(self, corpus_path, capsys):
        main(["score", "--input", corpus_path, "--test-embedder-dim", "8"])
        first, _ = capsys.readouterr()
        main(["score", "--input", corpus_path, "--test-embedder-dim", "8"])
        second, _ = capsys.readouterr()
        assert first == second

    def test_embedding_table_matches_test_embedder(self, corpus_path, capsys, tmp_path):
        provider = Provider(dimension=8, seed=42)
        table_path = tmp_path / "emb.jsonl"
        with open(table_path, "w", encoding="utf-8") as handle:
            for record in load_corpus(corpus_path).iter_records():
                entry = provider.embeddings_for(record)
                handle.write(json.dumps({
                    "id": entry.record_id,
                    "dim": entry.dimension,
                    "tokens": entry.tokens,
                    "vectors": entry.vectors.tolist(),
                }) + "\n")

        main(["score", "--input", corpus_path, "--test-embedder-dim", "8"])
        direct, _ = capsys.readouterr()
        main(["score", "--input", corpus_path, "--embeddings", str(table_path)])
        via_table, _ = capsys.readouterr()
        assert direct == via_table

    def test_embeddings_and_test_dim_are_exclusive(self, corpus_path, capsys, tmp_path):
        table = tmp_path / "emb.jsonl"
        table.write_text("", encoding="utf-8")
        code = main([
            "score", "--input", corpus_path,
            "--embeddings", str(table), "--test-embedder-dim", "8",
        ])
        assert code == 2
        assert "mutually exclusive" in capsys.readouterr().err

    def test_provider_is_required(self, corpus_path, capsys):
        assert main(["score", "--input", corpus_path]) == 2
        assert "needs --embeddings or --test-embedder-dim" in capsys.readouterr().err

    def test_semantic_field_changes_scores(self, corpus_path, capsys):
        main([
            "score", "--input", corpus_path,
            "--test-embedder-dim", "8", "--semantic-field", "recall",
        ])
        recall_out, _ = capsys.readouterr()
        main(["score", "--input", corpus_path, "--test-embedder-dim", "8"])
        f1_out, _ = capsys.readouterr()
        assert recall_out != f1_out

    def test_unknown_semantic_field(self, corpus_path, capsys):
        code = main([
            "score", "--input", corpus_path,
            "--test-embedder-dim", "8", "--semantic-field", "f2",
        ])
        assert code == 2


class TestRank:
    def test_cards_without_baselines(self, corpus_path, capsys):
        assert main(["rank", "--input", corpus_path, "--test-embedder-dim", "8"]) == 0
        out, err = capsys.readouterr()
        cards = [json.loads(line) for line in out.splitlines()]
        assert len(cards) == 5
        assert all(list(c) == CARD_KEYS for c in cards)
        assert err == "scored 5 candidates in 2 groups\n"


class TestFilter:
    def test_baseline_method_runs_without_embeddings(self, corpus_path, capsys):
        assert main(["filter", "--input", corpus_path, "--method", "bleu", "--n", "1"]) == 0
        out, err = capsys.readouterr()
        records = [json.loads(line) for line in out.splitlines()]
        assert len(records) == 5
        assert [r["id"] for r in records if r["source_id"] is None] == ["o1", "o2", "u1"]
        assert err.splitlines() == [
            "filtered 2 groups with bleu n=1",
            "  booking: 4 -> 2",
            "  cancel: 3 -> 2",
            "  chitchat: 1 -> 1",
            "  total: 8 -> 5",
        ]

    def test_rank_fusion_filter(self, corpus_path, capsys):
        code = main([
            "filter", "--input", corpus_path,
            "--method", "rankaug", "--n", "2", "--test-embedder-dim", "8",
        ])
        assert code == 0
        out, err = capsys.readouterr()
        assert len(out.splitlines()) == 7
        assert "  total: 8 -> 7" in err

    def test_rank_fusion_needs_embeddings(self, corpus_path, capsys):
        code = main(["filter", "--input", corpus_path, "--method", "rankaug", "--n", "2"])
        assert code == 2
        assert "'rankaug' needs --embeddings" in capsys.readouterr().err

    def test_alignment_method_needs_embeddings(self, corpus_path, capsys):
        code = main(["filter", "--input", corpus_path, "--method", "bertscore", "--n", "1"])
        assert code == 2

    def test_override_rejected_for_rank_fusion(self, corpus_path, capsys):
        code = main([
            "filter", "--input", corpus_path, "--method", "rankaug", "--n", "1",
            "--test-embedder-dim", "8", "--direction-override", "higher",
        ])
        assert code == 1
        err = capsys.readouterr().err
        assert err == "error: direction override applies only to baseline methods\n"

    def test_override_flips_a_baseline(self, corpus_path, capsys):
        main([
            "filter", "--input", corpus_path, "--method", "levenshtein", "--n", "1",
        ])
        nearest, _ = capsys.readouterr()
        main([
            "filter", "--input", corpus_path, "--method", "levenshtein", "--n", "1",
            "--direction-override", "higher",
        ])
        farthest, _ = capsys.readouterr()
        assert nearest != farthest

    def test_n_must_be_positive(self, corpus_path, capsys):
        code = main(["filter", "--input", corpus_path, "--method", "bleu", "--n", "0"])
        assert code == 2
        assert "--n must be >= 1" in capsys.readouterr().err

    def test_unknown_method(self, corpus_path):
        code = main(["filter", "--input", corpus_path, "--method", "tfidf", "--n", "1"])
        assert code == 2

    def test_worker_count_gives_identical_files(self, corpus_path, tmp_path):
        outputs = []
        for workers in ("1", "2", "8"):
            dest = tmp_path / f"w{workers}.jsonl"
            code = main([
                "filter", "--input", corpus_path,
                "--method", "rankaug", "--n", "2",
                "--test-embedder-dim", "8", "--workers", workers,
                "--output", str(dest),
            ])
            assert code == 0
            outputs.append(dest.read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]

    def test_filtered_file_reloads(self, corpus_path, tmp_path):
        dest = tmp_path / "filtered.jsonl"
        main([
            "filter", "--input", corpus_path, "--method", "meteor", "--n", "1",
            "--output", str(dest),
        ])
        corpus = load_corpus(str(dest))
        assert len(corpus.groups) == 2
        assert all(len(g.candidates) == 1 for g in corpus.groups)
        assert len(corpus.ungrouped) == 1


class TestReport:
    def test_single_corpus(self, corpus_path, capsys):
        assert main(["report", "--input", corpus_path]) == 0
        out, err = capsys.readouterr()
        assert out.splitlines() == [
            "label records",
            "booking 4",
            "cancel 3",
            "chitchat 1",
            "total: 3 classes, 3, 8",
        ]
        assert err == ""

    def test_before_and_after(self, corpus_path, capsys, tmp_path):
        filtered = tmp_path / "filtered.jsonl"
        main([
            "filter", "--input", corpus_path, "--method", "bleu", "--n", "1",
            "--output", str(filtered),
        ])
        capsys.readouterr()
        assert main(["report", "--input", corpus_path, str(filtered)]) == 0
        out, err = capsys.readouterr()
        assert out.splitlines() == [
            "label before after",
            "booking 4 2",
            "cancel 3 2",
            "chitchat 1 1",
            "total: 3 classes, 3, 8, 5",
        ]
        assert err == ""

    def test_unmatched_groups_warn_on_stderr(self, corpus_path, capsys, tmp_path):
        partial = tmp_path / "partial.jsonl"
        partial.write_text(
            "".join(line + "\n" for line in CORPUS.splitlines()[:4]),
            encoding="utf-8",
        )
        assert main(["report", "--input", corpus_path, str(partial)]) == 0
        out, err = capsys.readouterr()
        assert err == "warning: groups present in only one corpus: o2\n"
        assert out.splitlines()[0] == "label before after"

    def test_three_inputs_rejected(self, corpus_path, capsys):
        code = main(["report", "--input", corpus_path, corpus_path, corpus_path])
        assert code == 2
        assert "one or two" in capsys.readouterr().err

    def test_output_flag(self, corpus_path, tmp_path, capsys):
        dest = tmp_path / "report.txt"
        assert main(["report", "--input", corpus_path, "--output", str(dest)]) == 0
        assert capsys.readouterr().out == ""
        assert dest.read_text(encoding="utf-8").endswith("total: 3 classes, 3, 8\n")


class TestErrors:
    def test_missing_input_file(self, tmp_path, capsys):
        code = main(["report", "--input", str(tmp_path / "absent.jsonl")])
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_invalid_corpus(self, tmp_path, capsys):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id": "o1"}\n', encoding="utf-8")
        code = main(["report", "--input", str(path)])
        assert code == 1
        assert "error: line 1" in capsys.readouterr().err

    def test_invalid_embedding_table(self, corpus_path, tmp_path, capsys):
        table = tmp_path / "emb.jsonl"
        table.write_text('{"id": "o1"}\n', encoding="utf-8")
        code = main(["score", "--input", corpus_path, "--embeddings", str(table)])
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_no_arguments(self, capsys):
        assert main([]) == 2

    def test_unknown_command(self, capsys):
        assert main(["summarize"]) == 2
