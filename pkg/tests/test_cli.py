from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import pytest

from uppcalc import Curve, Point, Segment, Sequence, equivalent
from uppcalc.cli import ExitCode, main
from uppcalc.serialization import loads_curve

SAMPLES = Path(__file__).resolve().parents[1] / "docs" / "samples"


def _write(path: Path, document: object) -> Path:
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


def _rows(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


def test_eval_prints_scalars_as_fractions(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["eval", "--defs", str(SAMPLES / "delay-bound.defs.json"), "--expr", str(SAMPLES / "delay-bound.expr.json")])

    assert code == ExitCode.OK
    assert capsys.readouterr().out.strip() == "2/1"


def test_eval_writes_curve_results(tmp_path: Path) -> None:
    out = tmp_path / "residual.json"
    code = main(
        [
            "eval",
            "--sequential",
            "--defs",
            str(SAMPLES / "residual.defs.json"),
            "--expr",
            str(SAMPLES / "residual.expr.json"),
            "--out",
            str(out),
        ]
    )

    assert code == ExitCode.OK
    expected = Curve(Sequence((Point(0, 0), Segment(0, 4, 0, 0), Point(4, 0), Segment(4, 6, 3, 1))), 5, 1, 1)
    assert equivalent(loads_curve(out.read_bytes()), expected)


def test_eval_reports_unresolved_references(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    defs = _write(tmp_path / "defs.json", {"a": {"type": "sigmaRho", "sigma": 1, "rho": 1}})
    expr = _write(tmp_path / "expr.json", {"op": "conv", "args": [{"ref": "a"}, {"ref": "b"}]})

    assert main(["eval", "--defs", str(defs), "--expr", str(expr)]) == ExitCode.UNRESOLVED
    assert "'b'" in capsys.readouterr().err


def test_eval_reports_parse_errors(tmp_path: Path) -> None:
    defs = _write(tmp_path / "defs.json", {"a": {"type": "sigmaRho", "sigma": "0.5", "rho": 1}})
    expr = _write(tmp_path / "expr.json", {"ref": "a"})

    assert main(["eval", "--defs", str(defs), "--expr", str(expr)]) == ExitCode.PARSE_ERROR


def test_eval_reports_domain_errors(tmp_path: Path) -> None:
    defs = _write(tmp_path / "defs.json", {"a": {"type": "constant", "value": -1}})
    expr = _write(tmp_path / "expr.json", {"op": "subclosure", "args": [{"ref": "a"}]})

    assert main(["eval", "--defs", str(defs), "--expr", str(expr)]) == ExitCode.DOMAIN_ERROR


def test_eval_treats_bad_operation_arguments_as_domain_errors(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    defs = _write(tmp_path / "defs.json", {"a": {"type": "rateLatency", "rate": "1", "latency": "0"}})
    expr = _write(tmp_path / "expr.json", {"op": "delay", "args": [{"ref": "a"}], "params": {"theta": "inf"}})

    assert main(["eval", "--defs", str(defs), "--expr", str(expr)]) == ExitCode.DOMAIN_ERROR
    assert "$" in capsys.readouterr().err


def test_plot_lists_every_breakpoint(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["plot", str(SAMPLES / "sawtooth.json"), "--until", "4"]) == ExitCode.OK

    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["t", "leftLimit", "value", "rightLimit", "decimal"]
    assert rows[1] == ["0", "", "0", "0", "0"]
    assert ["2", "2", "2", "2"] in [row[:4] for row in rows]
    assert rows[-1][:4] == ["4", "3", "3", "3"]


@pytest.mark.parametrize("sample", sorted(SAMPLES.glob("*.json")), ids=lambda path: path.name)
def test_samples_write_rationals_as_strings(sample: Path) -> None:
    def numbers(node: object) -> list[object]:
        if isinstance(node, dict):
            return [found for value in node.values() for found in numbers(value)]
        if isinstance(node, list):
            return [found for value in node for found in numbers(value)]
        return [node] if isinstance(node, int | float) and not isinstance(node, bool) else []

    assert numbers(json.loads(sample.read_text(encoding="utf-8"))) == []


def test_plot_shows_infinite_limits(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    curve = _write(tmp_path / "delay.json", {"type": "delay", "theta": 4})

    assert main(["plot", str(curve), "--until", "6"]) == ExitCode.OK

    rows = {row[0]: row for row in _rows(capsys.readouterr().out)[1:]}
    assert rows["4"][2:4] == ["0", "inf"]
    assert rows["6"][2:] == ["inf", "inf", "inf"]


def test_plot_of_a_constant_has_two_rows(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    curve = _write(tmp_path / "zero.json", {"type": "constant", "value": 0})

    assert main(["plot", str(curve), "--until", "1"]) == ExitCode.OK
    assert len(_rows(capsys.readouterr().out)) == 3


def test_plot_rejects_a_non_positive_horizon() -> None:
    assert main(["plot", str(SAMPLES / "sawtooth.json"), "--until", "0"]) == ExitCode.DOMAIN_ERROR


@pytest.mark.parametrize(
    ("document", "prop", "expected", "printed"),
    [
        ({"type": "sigmaRho", "sigma": 4, "rho": 1}, "subAdditive", ExitCode.OK, "true"),
        ({"type": "rateLatency", "rate": 3, "latency": 3}, "concave", ExitCode.FALSE, "false"),
        ({"type": "rateLatency", "rate": 3, "latency": 3}, "convex", ExitCode.OK, "true"),
    ],
)
def test_check_prints_and_exits_with_the_verdict(
    tmp_path: Path,
    capsys: pytest.CaptureFixture[str],
    document: dict[str, object],
    prop: str,
    expected: ExitCode,
    printed: str,
) -> None:
    curve = _write(tmp_path / "curve.json", document)

    assert main(["check", str(curve), "--property", prop]) == expected
    assert capsys.readouterr().out.strip() == printed


def test_check_rejects_unknown_properties(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["check", str(SAMPLES / "sawtooth.json"), "--property", "periodic"]) == ExitCode.PARSE_ERROR
    assert "unknown property" in capsys.readouterr().err


def test_bench_writes_a_report(tmp_path: Path) -> None:
    out = tmp_path / "bench.json"

    assert main(["bench", "--case", "trivial", "--runs", "3", "--out", str(out)]) == ExitCode.OK

    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["case"] == "trivial"
    assert [entry["name"] for entry in report["configurations"]] == [
        "standard-sequential",
        "standard-parallel",
        "optimized-sequential",
        "optimized-parallel",
    ]


def test_bench_needs_three_runs() -> None:
    assert main(["bench", "--case", "trivial", "--runs", "2"]) == ExitCode.DOMAIN_ERROR
