"""Command line front end: route, verify, repl, analyze, serve."""

import json
import sys
from pathlib import Path

import click

from . import __version__
from .defaults import default_map_text, default_templates_text
from .dialogue import run_session
from .mapcore import parse_map, validate_map
from .navsim import verify_roundtrip
from .nlg import STYLES, generate, load_templates
from .router import RoutingError, segment_route, shortest_path
from .stats import render_markdown, analyze_sessions
from .dialogue import load_sessions


def _load_inputs(map_path: str | None, template_path: str | None):
    map_text = Path(map_path).read_text(encoding="utf-8") if map_path else default_map_text()
    tpl_text = (Path(template_path).read_text(encoding="utf-8")
                if template_path else default_templates_text())
    return parse_map(map_text), load_templates(tpl_text)


map_option = click.option("--map", "map_path", type=click.Path(exists=True),
                          default=None, help="Map DSL file (bundled office map by default).")
templates_option = click.option("--templates", "template_path", type=click.Path(exists=True),
                                default=None, help="Template file (bundled set by default).")


@click.group()
@click.version_option(version=__version__, prog_name="waydirector")
def main():
    """Indoor route directions in landmark and skeletal styles."""


@main.command()
@map_option
@templates_option
@click.option("--to", "destination", required=True, help='Destination, e.g. "room 4".')
@click.option("--style", type=click.Choice(STYLES), default="landmark", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--arrival/--no-arrival", default=False, show_default=True,
              help="Append the arrival sentence after the final turn.")
@click.option("--json", "as_json", is_flag=True, help="Emit route, segments, and sentences as JSON.")
def route(map_path, template_path, destination, style, seed, arrival, as_json):
    """Generate spoken-style directions to a room."""
    indoor_map, templates = _load_inputs(map_path, template_path)
    try:
        found = shortest_path(indoor_map, destination)
    except RoutingError as exc:
        raise click.ClickException(str(exc))
    segments = segment_route(found)
    script = generate(segments, style, templates, seed, include_arrival=arrival)
    if as_json:
        click.echo(json.dumps({
            "destination": destination,
            "style": style,
            "seed": seed,
            "route": found.node_sequence(indoor_map.start),
            "segments": [
                {"kind": s.kind, "direction": s.direction,
                 "landmark": s.landmark, "follow_hops": s.follow_hops}
                for s in segments
            ],
            "sentences": list(script.sentences),
        }, indent=2))
    else:
        click.echo(script.text if script.sentences else "You are already there.")


@main.command()
@map_option
@templates_option
@click.option("--all", "sweep_all", is_flag=True, help="Verify every room on the map.")
@click.option("--to", "destination", default=None, help="Verify a single destination.")
@click.option("--seeds", type=int, default=20, show_default=True,
              help="Seeds 0..N-1 per (room, style) cell.")
@click.option("--arrival/--no-arrival", default=False, show_default=True)
def verify(map_path, template_path, sweep_all, destination, seeds, arrival):
    """Round-trip check: generate, parse back, and walk the map."""
    indoor_map, templates = _load_inputs(map_path, template_path)
    report = validate_map(indoor_map)
    if not report.ok:
        for violation in report.violations:
            click.echo(f"violation {violation.code}: {violation.message}")
        raise click.ClickException("map fails validation")

    if sweep_all:
        rooms = sorted(
            (n for n in indoor_map.rooms()),
            key=lambda n: (n.room_number is None, n.room_number or 0, n.id),
        )
        destinations = [n.id for n in rooms]
    elif destination is not None:
        destinations = [destination]
    else:
        raise click.ClickException("pass --all or --to DESTINATION")

    failures = 0
    for dest in destinations:
        for style in STYLES:
            bad = []
            for seed in range(seeds):
                result = verify_roundtrip(indoor_map, dest, style, seed, templates,
                                          include_arrival=arrival)
                if not result.ok:
                    bad.append((seed, result.diagnostics))
            status = "ok" if not bad else f"FAIL ({len(bad)}/{seeds} seeds)"
            click.echo(f"{dest:12s} {style:9s} {status}")
            if bad:
                failures += len(bad)
                click.echo(f"    first failure: seed {bad[0][0]}: {bad[0][1]}")
    if failures:
        raise click.ClickException(f"{failures} round-trip failures")
    click.echo("all round trips ok")


@main.command()
@map_option
@templates_option
@click.option("--participant", required=True, help="Participant identifier, e.g. P01.")
@click.option("--order-seed", type=int, default=0, show_default=True,
              help="Seed for the initial-condition coin flip.")
@click.option("--out", "out_dir", type=click.Path(), default=None,
              help="Directory for the session record and event log.")
@click.option("--seed", "nlg_seed", type=int, default=0, show_default=True,
              help="Seed for instruction phrasing.")
def repl(map_path, template_path, participant, order_seed, out_dir, nlg_seed):
    """Run the interactive study session on the terminal."""
    from .dialogue import ProtocolConfig

    indoor_map, templates = _load_inputs(map_path, template_path)
    record = run_session(
        indoor_map, templates, participant,
        order_seed=order_seed,
        config=ProtocolConfig(nlg_seed=nlg_seed),
        out_dir=out_dir,
    )
    if out_dir:
        click.echo(f"session saved to {Path(out_dir) / (participant + '.json')}")
    if not record.complete:
        sys.exit(1)


@main.command()
@click.option("--sessions", "session_dir", type=click.Path(exists=True), required=True,
              help="Directory of per-participant session JSON files.")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Write the report JSON here.")
@click.option("--markdown", is_flag=True, help="Print the report as markdown tables.")
def analyze(session_dir, out_path, markdown):
    """Analyze recorded sessions: descriptives, alpha, Wilcoxon, correlations."""
    records = load_sessions(session_dir)
    complete = [r for r in records if r.complete]
    skipped = [r.participant_id for r in records if not r.complete]
    if skipped:
        click.echo(f"skipping incomplete records: {', '.join(skipped)}", err=True)
    try:
        report = analyze_sessions(complete)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    payload = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(payload, encoding="utf-8")
        click.echo(f"report written to {out_path}")
    if markdown:
        click.echo(render_markdown(report))
    if not out_path and not markdown:
        click.echo(payload)


@main.command()
@map_option
@templates_option
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--sessions", "session_dir", type=click.Path(), default=None,
              help="Directory for session records posted by clients.")
@click.option("--cors", "cors_origin", default="*", show_default=True,
              help="Allowed CORS origin.")
@click.option("--ui", "ui_dir", type=click.Path(exists=True, file_okay=False),
              default=None, help="Serve this directory of static UI files at /.")
def serve(map_path, template_path, host, port, session_dir, cors_origin, ui_dir):
    """Serve the HTTP API for the web client."""
    from .api import ApiConfig, serve as run_server

    map_file = Path(map_path) if map_path else None
    tpl_file = Path(template_path) if template_path else None
    if map_file is None:
        map_file = Path(__file__).parent / "data" / "office.map"
    if tpl_file is None:
        tpl_file = Path(__file__).parent / "data" / "default.tpl"
    run_server(ApiConfig(
        map_path=map_file,
        template_path=tpl_file,
        session_dir=Path(session_dir) if session_dir else None,
        host=host,
        port=port,
        cors_origins=(cors_origin,) if cors_origin else (),
        ui_dir=Path(ui_dir) if ui_dir else None,
    ))


if __name__ == "__main__":
    main()
