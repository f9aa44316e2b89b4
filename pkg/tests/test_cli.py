import csv
import io
import json
import logging

import pytest

from krcore.cli import EXIT_BUDGET, EXIT_CONFIG, EXIT_NAIVE_CAP, EXIT_OK, main
from krcore.graph import GraphError
from krcore.io import ParseError, load_graph, read_cores


def write_instance(tmp_path, fixture, name="g"):
    g, t = fixture
    edges = tmp_path / f"{name}.edges"
    attrs = tmp_path / f"{name}.attrs"
    edges.write_text("# edge list\n" + "".join(f"{u} {v}\n" for u, v in g.edges()))
    attrs.write_text("".join(
        f"{u} " + " ".join(f"{tok}:{w:g}" for tok, w in sorted(a.weights.items())) + "\n"
        for u, a in enumerate(g.attrs)
    ))
    return str(edges), str(attrs), t.r


def keyword_args(edges, attrs, r, *extra):
    return ["--graph", edges, "--attrs", attrs, "--attr-mode", "keywords", "--r", str(r), *extra]


def test_load_geo_example(tmp_path):
    (tmp_path / "e").write_text("0 1\n1 2\n")
    (tmp_path / "a").write_text("0 0 0\n1 3 4\n2 6 8\n")
    g = load_graph(tmp_path / "e", tmp_path / "a", "geo")
    assert (g.n, g.m) == (3, 2)


def test_self_loop_is_dropped_with_a_warning(tmp_path, caplog):
    (tmp_path / "e").write_text("0 0\n0 1\n")
    (tmp_path / "a").write_text("0 0 0\n1 1 1\n")
    with caplog.at_level(logging.WARNING):
        g = load_graph(tmp_path / "e", tmp_path / "a", "geo")
    assert g.dropped_self_loops == 1 and g.m == 1
    assert "1 self-loops" in caplog.text


def test_missing_attribute_names_the_vertex(tmp_path):
    (tmp_path / "e").write_text("0 1\n1 2\n")
    (tmp_path / "a").write_text("0 0 0\n1 3 4\n")
    with pytest.raises(GraphError, match=r"\b2\b"):
        load_graph(tmp_path / "e", tmp_path / "a", "geo")


def test_parse_errors_carry_line_numbers(tmp_path):
    (tmp_path / "e").write_text("0 1\n1 2 3\n")
    (tmp_path / "a").write_text("0 a:1\n1 b:x\n")
    with pytest.raises(ParseError, match=":2:"):
        load_graph(tmp_path / "e", tmp_path / "a", "keywords")
    (tmp_path / "e").write_text("0 1\n")
    with pytest.raises(ParseError, match=":2:"):
        load_graph(tmp_path / "e", tmp_path / "a", "keywords")


def test_isolated_attributed_vertices_and_string_ids(tmp_path):
    (tmp_path / "e").write_text("b a\n")
    (tmp_path / "a").write_text("a 0 0\nb 1 0\n7 5 5\n")
    g = load_graph(tmp_path / "e", tmp_path / "a", "geo")
    assert g.labels == (7, "a", "b") and g.m == 1


def test_enumerate_writes_results_and_stats(tmp_path, fix_k6d):
    edges, attrs, r = write_instance(tmp_path, fix_k6d)
    out = tmp_path / "cores.jsonl"
    code = main(["enumerate", *keyword_args(edges, attrs, r, "--k", "2", "--out", str(out))])
    assert code == EXIT_OK
    assert read_cores(out) == [{"vertices": [0, 1, 2, 3, 4], "size": 5}, {"vertices": [1, 2, 3, 4, 5], "size": 5}]
    stats = json.loads((tmp_path / "cores.jsonl.stats.json").read_text())
    assert (stats["core_count"], stats["max_size"], stats["avg_size"]) == (2, 5, 5.0)
    for key in ("wall_seconds", "nodes_visited", "prunes_by_kind", "early_terminations", "bound_cutoffs"):
        assert key in stats


def test_results_are_byte_identical_across_runs(tmp_path, fix_k6d):
    edges, attrs, r = write_instance(tmp_path, fix_k6d)
    texts = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert main(["enumerate", *keyword_args(edges, attrs, r, "--k", "2", "--order", "random",
                                                "--seed", "4", "--out", str(out))]) == EXIT_OK
        texts.append(out.read_bytes())
    assert texts[0] == texts[1]


def test_every_algorithm_gives_the_same_cores(tmp_path, fix_k6d):
    edges, attrs, r = write_instance(tmp_path, fix_k6d)
    seen = set()
    for algo in ("advanced", "basic", "naive", "clique"):
        out = tmp_path / algo
        assert main(["enumerate", *keyword_args(edges, attrs, r, "--k", "2", "--algo", algo, "--out", str(out))]) == 0
        seen.add(out.read_text())
    out = tmp_path / "oracle"
    assert main(["oracle", *keyword_args(edges, attrs, r, "--k", "2", "--out", str(out))]) == 0
    seen.add(out.read_text())
    assert len(seen) == 1


def test_maximum_on_path_is_empty(tmp_path, fix_path3, capsys):
    edges, attrs, r = write_instance(tmp_path, fix_path3)
    assert main(["maximum", *keyword_args(edges, attrs, r, "--k", "2")]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out == ""
    assert json.loads(captured.err.strip().splitlines()[-1])["core_count"] == 0


def test_bench_rows_per_bound(tmp_path, fix_k6d, capsys):
    edges, attrs, r = write_instance(tmp_path, fix_k6d)
    assert main(["bench", *keyword_args(edges, attrs, r, "--k", "2")]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [row["bound"] for row in rows] == ["naive", "color", "kcore", "kkcore"]
    assert {row["best_size"] for row in rows} == {"5"}


def test_stats_command(tmp_path, fix_k6d, capsys):
    edges, attrs, r = write_instance(tmp_path, fix_k6d)
    assert main(["stats", *keyword_args(edges, attrs, r, "--k", "2")]) == EXIT_OK
    info = json.loads(capsys.readouterr().out)
    assert info["vertices"] == 6 and info["components"] == 1 and info["dissimilar_pairs_in_components"] == 1


def test_exit_codes(tmp_path, fix_k6d):
    edges, attrs, r = write_instance(tmp_path, fix_k6d)
    assert main(["enumerate", *keyword_args(edges, attrs, r, "--k", "0")]) == EXIT_CONFIG
    assert main(["enumerate", *keyword_args(edges, attrs, r, "--k", "2", "--metric", "euclidean")]) == EXIT_CONFIG
    assert main(["enumerate", *keyword_args(edges, attrs, r, "--k", "2", "--node-budget", "1")]) == EXIT_BUDGET
    assert main(["enumerate", *keyword_args(edges, attrs, r, "--k", "2", "--algo", "naive",
                                            "--naive-cap", "3")]) == EXIT_NAIVE_CAP
    assert main(["enumerate", "--graph", edges]) == EXIT_CONFIG
    assert main(["enumerate", *keyword_args(str(tmp_path / "missing"), attrs, r, "--k", "2")]) == EXIT_CONFIG
