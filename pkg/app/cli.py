"""Command-line front end.

JSON goes to stdout and logs to stderr. Exit codes: 0 on success, 1 when a
verification or check fails or a domain error occurs, 2 on usage errors and
malformed input.
"""

import argparse
import json
import logging
import re
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import BaseModel, ValidationError

from config.settings import settings
from schemas.cartan import CartanSchema, FoldResponse
from schemas.covering import CoveringBundle
from schemas.groups import GroupSpec
from schemas.modules import load_module
from schemas.oracle import OracleProfile
from schemas.registry import ExampleDetail, ExampleSummary, TableRowSchema
from schemas.symplectic import DecorationSchema
from services import dynkin
from services.cartan import CartanMatrix, fold, type_label
from services.certificate import certify, check_example
from services.constructions import construct
from services.exceptions import CoveringNicholsError, MalformedInputError
from services.oracle import profile
from services.registry import EXAMPLES, worked_example, summary_table, table_row_for
from services.symplectic import exhaustive_nullities, minimal_root_system, verify_root_system

logger = logging.getLogger(__name__)

_ORBIT = re.compile(r"\{([^}]*)\}")


def _emit(payload: BaseModel | list | dict) -> None:
    if isinstance(payload, BaseModel):
        print(payload.model_dump_json(indent=2))
    else:
        print(json.dumps(payload, indent=2, default=lambda m: m.model_dump()))


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedInputError(f"Cannot read {path}: {e.strerror}") from e


def parse_orbits(text: str) -> list[list[int]]:
    """ "{1,5}{2,4}{3}" or "1,5/2,4/3" as 0-based orbits."""
    groups = _ORBIT.findall(text) or text.split("/")
    try:
        return [[int(x) - 1 for x in group.split(",") if x.strip()] for group in groups]
    except ValueError as e:
        raise MalformedInputError(f"Cannot parse orbits {text!r}") from e


def _load_cartan(source: str) -> CartanMatrix:
    """A diagram label or a JSON file holding a matrix or a Cartan object."""
    if not Path(source).is_file():
        return CartanMatrix(dynkin.cartan_matrix(source))
    data = json.loads(_read(source))
    return CartanMatrix(data["matrix"] if isinstance(data, dict) else data)


def cmd_srs(args: argparse.Namespace) -> int:
    decoration = minimal_root_system(args.diagram)
    result = DecorationSchema.from_decoration(decoration, verify_root_system(decoration)).model_dump()
    if args.search:
        result["exhaustive_nullities"] = sorted(exhaustive_nullities(args.diagram))
    _emit(result)
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    extension = GroupSpec(preset=args.group).resolve()
    bundle = CoveringBundle.from_result(construct(extension, args.type))
    if args.output:
        Path(args.output).write_text(bundle.model_dump_json(indent=2), encoding="utf-8")
        logger.info("Bundle written: path=%s", args.output)
    _emit(bundle)
    return 0


def cmd_fold(args: argparse.Namespace) -> int:
    cartan = _load_cartan(args.cartan)
    folded = fold(cartan, parse_orbits(args.orbits))
    _emit(FoldResponse(folded=CartanSchema.from_matrix(folded, type_label(folded)), unfolded_type=type_label(cartan)))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        bundle = CoveringBundle.model_validate_json(_read(args.bundle))
    except ValidationError as e:
        raise MalformedInputError(f"Invalid bundle: {e}") from e
    certificate = certify(bundle, args.oracle_degree, args.threads)
    _emit(certificate)
    return 0 if certificate.passed else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    module = load_module(_read(args.module))
    if args.cache:
        from config.database import SessionLocal
        from services.profile_service import ProfileService

        db = SessionLocal()
        try:
            result = ProfileService(db).hilbert_profile(module, args.dmax, args.threads)
            db.commit()
        finally:
            db.close()
    else:
        result = OracleProfile(**profile(module, args.dmax, args.threads))
    _emit(result)
    return 0


def cmd_examples(args: argparse.Namespace) -> int:
    if args.id is None:
        if args.check:
            checks = [check_example(example_id, args.degree, args.threads) for example_id in EXAMPLES]
            _emit([check.model_dump() for check in checks])
            return 0 if all(check.passed for check in checks) else 1
        _emit([ExampleSummary.from_spec(spec).model_dump() for spec in EXAMPLES.values()])
        return 0
    if args.id not in EXAMPLES:
        raise MalformedInputError(f"Unknown example id: {args.id!r}")
    if args.check:
        check = check_example(args.id, args.degree, args.threads)
        _emit(check)
        print(f"{args.id}: {'PASS' if check.passed else 'FAIL'}", file=sys.stderr)
        return 0 if check.passed else 1
    _emit(ExampleDetail.from_bundle(worked_example(args.id)))
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    if args.rank is not None:
        center = args.center or 0
        _emit([{"type": label, "dimension_exponent": e} for label, e in table_row_for(args.rank, center)])
        return 0
    rows = [TableRowSchema.from_row(row) for row in summary_table()]
    _emit([row.model_dump() for row in rows])
    for row in rows:
        print(
            f"{row.family:8} rank {row.rank:6} center {row.center:16} {row.covering:18} 2^{row.dimension_exponent}",
            file=sys.stderr,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covering-nichols", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=settings.oracle_threads, help="oracle worker threads")
    parser.add_argument("--log-level", default=settings.log_level)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("srs", help="minimal symplectic root system of an ADE diagram")
    p.add_argument("diagram")
    p.add_argument("--search", action="store_true", help="also list nullities found by exhaustive search")
    p.set_defaults(handler=cmd_srs)

    p = sub.add_parser("construct", help="build a covering bundle")
    p.add_argument("--group", required=True, help="preset name or cocycle file")
    p.add_argument("--type", required=True, help="unramified:X, cn:n, f4 or disconnected:plan")
    p.add_argument("--output", help="also write the bundle to this file")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("fold", help="fold a Cartan matrix along orbits")
    p.add_argument("--cartan", required=True, help="JSON file or diagram label")
    p.add_argument("--orbits", required=True, help='1-based, e.g. "{1,5}{2,4}{3}"')
    p.set_defaults(handler=cmd_fold)

    p = sub.add_parser("verify", help="certificate for a covering bundle")
    p.add_argument("bundle")
    p.add_argument("--oracle-degree", type=int, default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("oracle", help="Hilbert prefix of a module file")
    p.add_argument("module")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--cache", action="store_true", help="use the profile cache database")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("examples", help="registered examples")
    p.add_argument("--id")
    p.add_argument("--check", action="store_true", help="compare oracle prefixes with the expected series")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(handler=cmd_examples)

    p = sub.add_parser("table", help="connected covering types by 2-rank and 2-center")
    p.add_argument("--rank", type=int)
    p.add_argument("--center", type=int)
    p.set_defaults(handler=cmd_table)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )
    if args.threads < 1:
        print("--threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.handler(args)
    except MalformedInputError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return 2
    except CoveringNicholsError as e:
        print(f"{type(e).__name__}: {e.message}", file=sys.stderr)
        return 1
    except Exception:
        logger.exception("Unexpected error in %s", args.command)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
