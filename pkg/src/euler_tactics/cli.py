"""Command-line front end.

Subcommands: ``check`` decides theorem validity (with a witness cell on
refutation), ``prove`` runs a tactic and emits a proof script, ``replay``
verifies a script step by step, ``metrics`` reports a replayed proof's
readability metrics, and ``serve`` starts the HTTP session service.

Exit codes: 0 success, 1 refuted/failed, 2 usage or parse errors.  Human
output goes to stdout; ``--json`` switches stdout to a single JSON
document; diagnostics go to stderr.  ``EULER_TACTICS_LOG`` selects the log
level.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .diagram import EulerError, Zone, all_contours
from .engine import is_finished, new_proof
from .metrics import metrics_json, proof_metrics
from .semantics import empty_cells
from .tactics import REGISTRY, apply_tactic
from .textio import (
    ParseError,
    ReplayError,
    load_script,
    parse_theorem_source,
    save_script,
)

log = logging.getLogger("euler_tactics")

OK, FAILED, USAGE = 0, 1, 2


def _setup_logging() -> None:
    level = os.environ.get("EULER_TACTICS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def _witness_cell(goal) -> Zone | None:
    """A cell the conclusion forces empty but the premise does not."""
    v = all_contours(goal.antecedent) | all_contours(goal.consequent)
    extra = empty_cells(goal.consequent, v) - empty_cells(goal.antecedent, v)
    if not extra:
        return None
    return Zone(min(extra, key=lambda c: (len(c), tuple(sorted(c)))))


def _check_one(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
        name, goal = parse_theorem_source(text)
    except (OSError, EulerError) as exc:
        return {"file": path, "error": str(exc)}
    witness = _witness_cell(goal)
    result = {"file": path, "name": name, "valid": witness is None}
    if witness is not None:
        result["witness"] = sorted(witness.in_set)
    return result


def cmd_check(args) -> int:
    jobs = max(1, args.jobs)
    if jobs > 1 and len(args.files) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_one, args.files))
    else:
        results = [_check_one(f) for f in args.files]

    if args.json:
        payload = results[0] if len(results) == 1 else results
        print(json.dumps(payload, indent=2))
    else:
        for r in results:
            if "error" in r:
                print(f"{r['file']}: ERROR {r['error']}", file=sys.stderr)
            elif r["valid"]:
                print(f"{r['file']}: VALID")
            else:
                cell = "(" + " ".join(r["witness"]) + ")"
                print(f"{r['file']}: INVALID witness cell {cell}")

    if any("error" in r for r in results):
        return USAGE
    if any(not r["valid"] for r in results):
        return FAILED
    return OK


def cmd_prove(args) -> int:
    if args.tactic not in REGISTRY:
        print(f"unknown tactic {args.tactic!r}; available: {', '.join(sorted(REGISTRY))}",
              file=sys.stderr)
        return USAGE
    try:
        text = Path(args.file).read_text(encoding="utf-8")
        name, goal = parse_theorem_source(text)
    except (OSError, EulerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    name = name or Path(args.file).stem
    proof = new_proof(goal)
    try:
        proof = apply_tactic(proof, args.tactic, 0)
    except EulerError as exc:
        log.info("tactic failed: %s", exc)
        print(f"{args.tactic} failed on {name}: {exc}", file=sys.stderr)
        return FAILED
    if not is_finished(proof):
        print(f"{args.tactic} left open subgoals on {name}", file=sys.stderr)
        return FAILED
    script = save_script(proof, name)
    if args.output:
        Path(args.output).write_text(script, encoding="utf-8")
    elif args.json:
        print(json.dumps({
            "name": name,
            "finished": True,
            "steps": len(proof.steps),
            "metrics": metrics_json(proof_metrics(proof)),
            "script": script,
        }, indent=2))
    else:
        sys.stdout.write(script)
    return OK


def _load_for_report(args) -> tuple[int, dict]:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        return USAGE, {"error": str(exc)}
    try:
        proof = load_script(text)
    except ParseError as exc:
        return USAGE, {"error": str(exc)}
    except ReplayError as exc:
        return FAILED, {"error": str(exc), "failed_step": exc.step_number}
    report = {
        "finished": is_finished(proof),
        "steps": len(proof.steps),
        "open_subgoals": len(proof.current.subgoals),
        "metrics": metrics_json(proof_metrics(proof)),
    }
    return OK, report


def cmd_replay(args) -> int:
    status, report = _load_for_report(args)
    if status != OK:
        print(f"replay failed: {report['error']}", file=sys.stderr)
        return status
    if args.strict_replay and not report["finished"]:
        report["error"] = "strict replay requires a finished proof"
        status = FAILED
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        state = "finished" if report["finished"] else f"open ({report['open_subgoals']} subgoals)"
        print(f"replayed {report['steps']} steps: {state}")
        if "error" in report:
            print(report["error"], file=sys.stderr)
    return status


def cmd_metrics(args) -> int:
    status, report = _load_for_report(args)
    if status != OK:
        print(f"metrics failed: {report['error']}", file=sys.stderr)
        return status
    print(json.dumps(report["metrics"], indent=2))
    return OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(snapshot_dir=args.snapshot_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="euler-tactics",
        description="Tactical theorem prover for conjunctive Euler diagrams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide whether theorems are valid")
    check.add_argument("files", nargs="+", metavar="FILE")
    check.add_argument("--json", action="store_true")
    check.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="check files in parallel")
    check.set_defaults(fn=cmd_check)

    prove = sub.add_parser("prove", help="prove a theorem with a tactic")
    prove.add_argument("file", metavar="FILE")
    prove.add_argument("--tactic", default="venn_depth", metavar="NAME")
    prove.add_argument("--json", action="store_true")
    prove.add_argument("-o", "--output", metavar="FILE", help="write the script here")
    prove.set_defaults(fn=cmd_prove)

    replay = sub.add_parser("replay", help="verify a proof script step by step")
    replay.add_argument("file", metavar="SCRIPT")
    replay.add_argument("--json", action="store_true")
    replay.add_argument("--strict-replay", action="store_true",
                        help="also require the replayed proof to be finished")
    replay.set_defaults(fn=cmd_replay)

    metrics = sub.add_parser("metrics", help="report metrics of a proof script")
    metrics.add_argument("file", metavar="SCRIPT")
    metrics.add_argument("--json", action="store_true")
    metrics.set_defaults(fn=cmd_metrics)

    serve = sub.add_parser("serve", help="run the HTTP proof service")
    serve.add_argument("--port", type=int, default=8642)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--snapshot-dir", metavar="DIR",
                       help="write session scripts here on shutdown")
    serve.add_argument("--ui-dir", metavar="DIR",
                       help="static web UI directory (default: ./frontend/dist if present)")
    serve.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    return args.fn(args)


def app() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    app()
