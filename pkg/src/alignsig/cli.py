"""Command-line interface: compare, table, match, rank.

Exit codes: 0 success, 1 internal error, 2 usage/validation error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import contingency, ingest, matcher, siggraph
from .errors import AlignsigError
from .model import (
    Alignment,
    ComparisonConfig,
    Correction,
    Mode,
    Perspective,
    TestKind,
)

PERSPECTIVES = {p.value: p for p in Perspective}
TESTS = {t.value: t for t in TestKind}
CORRECTIONS = {c.value: c for c in Correction}
MODES = {m.value: m for m in Mode}
METRICS = {m.value: m for m in matcher.MetricKind}


def _load_alignment(path: Path, system_name: str) -> Alignment:
    data = path.read_bytes()
    if data.lstrip().startswith(b"<"):
        return ingest.parse_alignment_xml(data, system_name)
    return ingest.parse_alignment_tsv(data, system_name)


def _parse_alignment_args(specs) -> list:
    alignments = []
    for spec in specs:
        if "=" not in spec:
            raise click.UsageError(f"--alignment must be name=path, got {spec!r}")
        name, _, path = spec.partition("=")
        alignments.append(_load_alignment(Path(path), name))
    return alignments


def _fail_validation(exc: Exception):
    click.echo(f"error: {exc}", err=True)
    sys.exit(2)


@click.group()
def main():
    """Statistical comparison of alignment systems on one matching task."""


@main.command()
@click.option("--reference", type=click.Path(exists=True, path_type=Path))
@click.option("--alignment", "alignments", multiple=True,
              help="name=path; repeat for each system (>=2).")
@click.option("--matrix", type=click.Path(exists=True, path_type=Path),
              help="Pre-built discordant matrix TSV (alternative to alignments).")
@click.option("--perspective", type=click.Choice(sorted(PERSPECTIVES)), default="ifp")
@click.option("--test", "test_name", type=click.Choice(sorted(TESTS)), default="midp")
@click.option("--correction", type=click.Choice(sorted(CORRECTIONS)), default=None)
@click.option("--mode", type=click.Choice(sorted(MODES)), default="nxn")
@click.option("--baseline", default=None, help="Baseline system name (nx1 mode).")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--bergmann-cap", type=int, default=10, show_default=True,
              help="Max systems for Bergmann's exhaustive-set enumeration.")
@click.option("--dot", "dot_out", type=click.Path(path_type=Path),
              help="Write the significance digraph as DOT.")
@click.option("--report", "report_out", type=click.Path(path_type=Path),
              help="Write the JSON comparison report.")
def compare(reference, alignments, matrix, perspective, test_name, correction,
            mode, baseline, alpha, bergmann_cap, dot_out, report_out):
    """Pairwise McNemar comparison with FWER correction; emits DOT + report."""
    persp = PERSPECTIVES[perspective]
    if correction is None:
        correction = "bergmann" if mode == "nxn" else "holm"
    try:
        cfg = ComparisonConfig(
            perspective=persp,
            test=TESTS[test_name],
            correction=CORRECTIONS[correction],
            mode=MODES[mode],
            baseline=baseline,
            alpha=alpha,
            bergmann_cap=bergmann_cap,
        )
    except (AlignsigError, ValueError) as exc:
        _fail_validation(exc)
    try:
        m = _resolve_matrix(reference, alignments, matrix, persp)
        report = siggraph.build_report(m, cfg)
    except (AlignsigError, ValueError) as exc:
        _fail_validation(exc)
    graph = siggraph.build_graph(m, cfg)
    if dot_out:
        dot_out.write_bytes(siggraph.emit_dot(graph))
    if report_out:
        report_out.write_bytes(siggraph.serialize_report(report))
    for group in report["ranking"]:
        click.echo(" & ".join(group))


def _resolve_matrix(reference, alignments, matrix, persp):
    if matrix is not None:
        return contingency.parse_matrix_tsv(matrix.read_bytes(), persp)
    if reference is None or len(alignments) < 2:
        raise click.UsageError(
            "provide either --matrix or --reference plus >=2 --alignment entries"
        )
    ref = _load_alignment(reference, "reference")
    systems = _parse_alignment_args(alignments)
    return contingency.build_discordant_matrix(ref, systems, persp)


@main.command()
@click.option("--reference", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--alignment", "alignments", multiple=True, required=True,
              help="name=path; repeat for each system (>=2).")
@click.option("--perspective", type=click.Choice(sorted(PERSPECTIVES)), default="ifp")
@click.option("--output", type=click.Path(path_type=Path), default=None,
              help="Output TSV path (default: stdout).")
def table(reference, alignments, perspective, output):
    """Emit the all-pairs discordant matrix as TSV."""
    try:
        ref = _load_alignment(reference, "reference")
        systems = _parse_alignment_args(alignments)
        m = contingency.build_discordant_matrix(
            ref, systems, PERSPECTIVES[perspective]
        )
    except (AlignsigError, ValueError) as exc:
        _fail_validation(exc)
    data = contingency.write_matrix_tsv(m)
    if output:
        output.write_bytes(data)
    else:
        click.echo(data.decode("utf-8"), nl=False)


@main.command()
@click.option("--source", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--target", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--metric", required=True)
@click.option("--threshold", type=float, default=0.0, show_default=True)
@click.option("--name", "system_name", default=None,
              help="System name recorded in the output (default: the metric).")
@click.option("--output", type=click.Path(path_type=Path), default=None,
              help="Output alignment TSV path (default: stdout).")
def match(source, target, metric, threshold, system_name, output):
    """Match two concept-label lists with a string metric + optimal assignment."""
    kind = METRICS.get(metric.lower())
    if kind is None:
        click.echo(
            f"error: unknown metric {metric!r}; choose one of "
            f"{', '.join(sorted(METRICS))}",
            err=True,
        )
        sys.exit(2)
    try:
        src = ingest.parse_label_list(source.read_bytes())
        tgt = ingest.parse_label_list(target.read_bytes())
        alignment = matcher.match(src, tgt, kind, threshold, system_name or kind.value)
    except (AlignsigError, ValueError) as exc:
        _fail_validation(exc)
    data = ingest.write_alignment_tsv(alignment)
    if output:
        output.write_bytes(data)
    else:
        click.echo(data.decode("utf-8"), nl=False)


@main.command()
@click.option("--report", "report_path", type=click.Path(exists=True, path_type=Path),
              required=True, help="JSON report produced by `compare`.")
def rank(report_path):
    """Print rank groups from a comparison report, one '&'-joined row per group."""
    try:
        report = json.loads(report_path.read_text("utf-8"))
        groups = report["ranking"]
    except (json.JSONDecodeError, KeyError) as exc:
        _fail_validation(exc)
    for group in groups:
        click.echo(" & ".join(group))


if __name__ == "__main__":
    main()
