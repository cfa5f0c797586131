"""Operations CLI: serve the API, seed questions, simulate cohorts, move snapshots."""

from __future__ import annotations

import argparse
import json
import socket
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence

from .api import create_app
from .config import ServiceConfig, load_config, validate_config
from .core import PlacementSystem
from .errors import PortInUse, ServiceError
from .simulate import DirectClient, simulate_cohort
from .storage import RepositorySet


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="learnplace", description="Learner placement service")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", help="JSON config file with {port, data_dir, pass_threshold, default_k}")
    serve.add_argument("--port", type=int, help="override the listen port")
    serve.add_argument("--data-dir", help="override the data directory")
    serve.add_argument("--pass-threshold", type=float, help="override the course pass threshold")

    seed = sub.add_parser("seed-questions", help="import a line-delimited question file (as drafts)")
    seed.add_argument("file", help="one JSON question per line: {section, prompt, options, correct_option}")
    seed.add_argument("--data-dir", default="data")
    seed.add_argument("--approve", action="store_true", help="approve the imported questions immediately")

    simulate = sub.add_parser("simulate", help="run a seeded synthetic cohort end to end")
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument(
        "--config",
        help="JSON file with optional {factor_distributions, score_model, questions_per_section, dimension}",
    )
    simulate.add_argument("--data-dir", help="defaults to a fresh temporary directory")

    export = sub.add_parser("export-snapshot", help="write all stores into one archive file")
    export.add_argument("path")
    export.add_argument("--data-dir", default="data")

    imp = sub.add_parser("import-snapshot", help="load an archive into an empty data directory")
    imp.add_argument("path")
    imp.add_argument("--data-dir", default="data")

    cases = sub.add_parser("export-cases", help="write the case base as line-delimited JSON")
    cases.add_argument("path")
    cases.add_argument("--data-dir", default="data")

    return parser


def _probe_port(host: str, port: int) -> None:
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((host, port))
    except OSError:
        raise PortInUse(f"port {port} is already in use")
    finally:
        probe.close()


def _cmd_serve(args: argparse.Namespace) -> int:
    config = load_config(args.config) if args.config else ServiceConfig()
    if args.port is not None:
        config.port = args.port
    if args.data_dir is not None:
        config.data_dir = args.data_dir
    if args.pass_threshold is not None:
        config.pass_threshold = args.pass_threshold
    validate_config(config)
    _probe_port("127.0.0.1", config.port)
    system = PlacementSystem(
        config.data_dir, pass_threshold=config.pass_threshold, default_k=config.default_k
    )
    app = create_app(system)
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=config.port, log_level="info")
    return 0


def _cmd_seed_questions(args: argparse.Namespace) -> int:
    system = PlacementSystem(args.data_dir)
    lines = Path(args.file).read_text(encoding="utf-8").splitlines()
    created = system.assessment.import_questions(lines)
    if args.approve:
        for record in created:
            system.assessment.approve_question(record["question_id"])
    status = "approved" if args.approve else "draft"
    print(f"imported {len(created)} questions ({status}) into {args.data_dir}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    options = {}
    if args.config:
        try:
            options = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error [BadConfig]: cannot read simulate config: {exc}", file=sys.stderr)
            return 2
    if args.data_dir:
        system = PlacementSystem(args.data_dir)
    else:
        # throwaway directory, skip fsync for speed
        system = PlacementSystem(tempfile.mkdtemp(prefix="learnplace-sim-"), fsync=False)
    summary = simulate_cohort(
        DirectClient(system),
        n=args.n,
        seed=args.seed,
        factor_distributions=options.get("factor_distributions"),
        score_model=options.get("score_model"),
        questions_per_section=options.get("questions_per_section", 12),
        dimension=options.get("dimension", "medium_of_instruction"),
    )
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _cmd_export_snapshot(args: argparse.Namespace) -> int:
    repos = RepositorySet(args.data_dir)
    repos.snapshot_export(args.path)
    print(f"exported {args.data_dir} to {args.path}")
    return 0


def _cmd_import_snapshot(args: argparse.Namespace) -> int:
    repos = RepositorySet(args.data_dir)
    repos.snapshot_import(args.path)
    print(f"imported {args.path} into {args.data_dir}")
    return 0


def _cmd_export_cases(args: argparse.Namespace) -> int:
    system = PlacementSystem(args.data_dir)
    lines = system.casebase.export_lines()
    Path(args.path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    print(f"exported {len(lines)} cases to {args.path}")
    return 0


_COMMANDS = {
    "serve": _cmd_serve,
    "seed-questions": _cmd_seed_questions,
    "simulate": _cmd_simulate,
    "export-snapshot": _cmd_export_snapshot,
    "import-snapshot": _cmd_import_snapshot,
    "export-cases": _cmd_export_cases,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ServiceError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
