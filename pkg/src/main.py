import argparse
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import console
from .builders import BUILTINS, BuilderSpec, build, builtin_spec, split_q
from .config import RunConfig, load_config
from .errors import UsageError, WorkbenchError
from .fchar import PRIMAL, PieceFunction
from .gact import ADJOINT, COADJOINT, OrbitT
from .gggr import GradedSetting, orbit_labels
from .models import RunReport
from .report_signing import verify_report
from .runner import Selection, Timings, _write_run_artifact, list_suites, load_target, run_suite
from .sl2 import jordan_type
from .ungraded import nmap_row


def _selection(args: argparse.Namespace) -> Selection:
    return Selection(
        builtin=getattr(args, "builtin", None),
        q=getattr(args, "q", None),
        algebra_path=getattr(args, "algebra", None),
        group_path=getattr(args, "group", None),
    )


def _finish(config: RunConfig, report: RunReport, out: Optional[str]) -> int:
    artifact = _write_run_artifact(config, report, out)
    where = f" Wrote: {artifact}" if artifact else ""
    if report.ok:
        console.done(f"{report.command} completed.{where}")
        return 0
    failed = next(s for s in report.suites if not s.ok)
    console.failed(f"{report.command} {failed.name}: {failed.message}.{where}")
    console.error("witness", json.dumps(failed.witness, sort_keys=True))
    return 2


def _jordan_label(setting: GradedSetting, orbit: OrbitT) -> Optional[List[int]]:
    A = setting.algebra
    if A.realisation is None:
        return None
    coords = A.decode(orbit.degree, orbit.representative)
    if orbit.side == COADJOINT:
        return list(jordan_type(A.field, A.to_matrix(A.neg(orbit.degree), A.eta(orbit.degree, coords))))
    return list(jordan_type(A.field, A.to_matrix(orbit.degree, coords)))


def _orbit_json(setting: GradedSetting, orbit: OrbitT, nilpotent: bool) -> Dict[str, Any]:
    A = setting.algebra
    row: Dict[str, Any] = {
        "representative": orbit.representative,
        "size": orbit.size,
        "coords": [int(c) for c in A.decode(orbit.degree, orbit.representative)],
        "nilpotent": nilpotent,
    }
    if nilpotent:
        label = _jordan_label(setting, orbit)
        if label is not None:
            row["jordanType"] = label
    return row


def _setup(args: argparse.Namespace, config: RunConfig, command: str, extra: Dict[str, Any]):
    timings = Timings(config.timings)
    with timings.phase("build"):
        target = load_target(config, _selection(args))
    setting = GradedSetting(target.algebra, target.group, config.threads)
    degree = target.algebra.deg(getattr(args, "degree", 0) or 0)
    inputs = dict(extra, selection=_selection(args).to_json(), config=config.describe(), degree=degree)
    report = RunReport(command, f"{target.label}-d{degree}", inputs, algebra=target.describe())
    return target, setting, degree, report, timings


# -- commands ---------------------------------------------------------------------------------


def cmd_build(args: argparse.Namespace, config: RunConfig) -> int:
    if args.builtin:
        if args.q is None:
            raise UsageError("--builtin needs --q")
        spec = builtin_spec(args.builtin, args.q)
    else:
        if not (args.family and args.n and args.q):
            raise UsageError("build needs --builtin, or --family, --n and --q")
        p, k = split_q(args.q)
        weights = tuple(int(a) for a in args.weights.split(",")) if args.weights else ()
        spec = BuilderSpec(args.family, args.n, p, k, args.m, weights)
    timings = Timings(config.timings)
    with timings.phase("build"):
        algebra, group = build(spec, config.group_cap)
    for path, payload in ((args.algebra_out, algebra.to_json()), (args.group_out, group.generators_json())):
        if path:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
            console.info("build", f"wrote {path}")
    report = RunReport(
        "build",
        algebra.label,
        {"spec": spec.to_json(), "config": config.describe()},
        algebra=algebra.describe(),
        result={"spec": spec.to_json(), "groupOrder": group.order, "algebra": algebra.to_json(), "group": group.generators_json()},
    )
    report.timings = timings.as_dict()
    return _finish(config, report, args.out)


def cmd_orbits(args: argparse.Namespace, config: RunConfig) -> int:
    side = COADJOINT if args.side == "coadjoint" else ADJOINT
    target, setting, r, report, timings = _setup(args, config, "orbits", {"side": side, "nilpotentOnly": args.nilpotent})
    with timings.phase("orbits"):
        nil = setting.group.nilpotent_mask(r, side)
        orbits = setting.group.orbit_partition(r, side, nil if args.nilpotent else None)
        rows = [_orbit_json(setting, o, bool(nil[o.representative])) for o in orbits]
    report.result = {"degree": r, "side": side, "count": len(rows), "orbits": rows}
    report.timings = timings.as_dict()
    console.info("orbits", f"{target.label}: {len(rows)} {side} orbits in degree {r}")
    return _finish(config, report, args.out)


def cmd_gggr(args: argparse.Namespace, config: RunConfig) -> int:
    target, setting, r, report, timings = _setup(args, config, "gggr", {})
    with timings.phase("gggr"):
        report.result = setting.gggr_table(r).to_json()
    report.timings = timings.as_dict()
    return _finish(config, report, args.out)


def _function_for(args: argparse.Namespace, setting: GradedSetting, r: int):
    A = setting.algebra
    kind = args.function
    if kind == "file":
        if not args.function_file:
            raise UsageError("--function file needs --function-file")
        try:
            obj = json.loads(Path(args.function_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read function file {args.function_file}: {e}") from e
        return PieceFunction.from_json(A, obj), f"file:{Path(args.function_file).name}"
    if args.orbit is None:
        raise UsageError(f"--function {kind} needs --orbit")
    idx = int(args.orbit)
    if not 0 <= idx < A.piece_size(r):
        raise UsageError(f"--orbit {idx} is not a point index of degree {r}")
    if kind == "chi":
        orbit = setting.orbit(r, idx)
        return setting.chi(orbit), f"chi[{orbit.representative}]"
    if kind == "gamma":
        if not setting.group.nilpotent_mask(r, COADJOINT)[idx]:
            raise UsageError(f"point {idx} is not nilpotent; Gamma needs a nilpotent coadjoint orbit")
        orbit = setting.orbit(r, idx)
        return setting.gamma_direct(orbit), f"gamma[{orbit.representative}]"
    orbit = setting.group.orbit_containing(r, idx, ADJOINT)
    return PieceFunction.indicator(A, r, orbit.points, PRIMAL), f"indicator[{orbit.representative}]"


def cmd_wavefront(args: argparse.Namespace, config: RunConfig) -> int:
    target, setting, r, report, timings = _setup(
        args, config, "wavefront", {"function": args.function, "orbit": args.orbit}
    )
    with timings.phase("wavefront"):
        f, label = _function_for(args, setting, r)
        wf = setting.wavefront(f)
        cone = orbit_labels(setting.cone(setting.support_orbits(f), r))
    report.result = {
        "function": label,
        "wavefront": [_orbit_json(setting, o, True) for o in wf],
        "coneOfSupport": cone,
        "agrees": orbit_labels(wf) == cone,
    }
    report.timings = timings.as_dict()
    console.info("wavefront", f"{label}: {len(wf)} orbits")
    return _finish(config, report, args.out)


def cmd_cone(args: argparse.Namespace, config: RunConfig) -> int:
    target, setting, r, report, timings = _setup(args, config, "cone", {"orbits": sorted(args.orbit)})
    with timings.phase("cone"):
        orbits = sorted({o.representative: o for o in (setting.orbit(r, int(i)) for i in args.orbit)}.values(),
                        key=lambda o: o.representative)
        cone = setting.cone(orbits, r)
        setting.check_cone_negation(orbits)
    report.result = {"orbits": orbit_labels(orbits), "cone": [_orbit_json(setting, o, True) for o in cone]}
    report.timings = timings.as_dict()
    return _finish(config, report, args.out)


def cmd_nmap(args: argparse.Namespace, config: RunConfig) -> int:
    target, setting, r, report, timings = _setup(args, config, "nmap", {"limit": args.limit})
    with timings.phase("nmap"):
        orbits = setting.coadjoint_orbits(0)
        if args.limit:
            orbits = orbits[: args.limit]
        report.result = {"orbits": [nmap_row(setting, o) for o in orbits]}
    report.timings = timings.as_dict()
    return _finish(config, report, args.out)


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    report = run_suite(args.suite, config, _selection(args))
    return _finish(config, report, args.out)


def cmd_suites(args: argparse.Namespace, config: RunConfig) -> int:
    print(json.dumps(list_suites(), indent=2, sort_keys=True))
    return 0


def cmd_check_report(args: argparse.Namespace, config: RunConfig) -> int:
    key = args.public_key or config.verify_key_b64
    if not key:
        raise UsageError("Missing REPORT_ED25519_PUBLIC_B64.")
    try:
        report = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read report {args.file}: {e}") from e
    decision = verify_report(report, key)
    if not decision.ok:
        console.failed(f"Report verification failed: {decision.reason}")
        return 1
    console.done(f"Report verified. payload_sha256={decision.payload_sha256}")
    return 0


# -- parser -----------------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--builtin", choices=sorted(BUILTINS), help="Builtin algebra")
    common.add_argument("--q", type=int, help="Field size for --builtin")
    common.add_argument("--algebra", help="Algebra description JSON")
    common.add_argument("--group", help="Generator JSON for --algebra")
    common.add_argument("--threads", type=int, help="Worker threads (default: WORKBENCH_THREADS or all cores)")
    common.add_argument("--group-cap", type=int, help="Largest group the closure may build")
    common.add_argument("--out", help="Report path, or - for stdout")
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--timings", action="store_true", help="Record wall-clock per phase")
    common.add_argument("--seed", type=int, default=0)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Graded Lie algebra workbench over finite fields")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p = sub.add_parser("build", parents=[common], help="Build an algebra and its group")
    p.add_argument("--family", choices=["gl", "sl"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, default=1, help="Grading modulus")
    p.add_argument("--weights", help="Comma-separated weight vector, e.g. 0,1,2")
    p.add_argument("--algebra-out")
    p.add_argument("--group-out")
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("orbits", parents=[common], help="Orbit partition of one piece")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--side", choices=["adjoint", "coadjoint"], default="coadjoint")
    p.add_argument("--nilpotent", action="store_true", help="Nilpotent orbits only")
    p.set_defaults(handler=cmd_orbits)

    p = sub.add_parser("gggr", parents=[common], help="Gamma table of one degree")
    p.add_argument("--degree", type=int, default=0)
    p.set_defaults(handler=cmd_gggr)

    p = sub.add_parser("wavefront", parents=[common], help="Wave front set of an invariant function")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--function", choices=["chi", "gamma", "indicator", "file"], default="chi")
    p.add_argument("--orbit", type=int, help="Point index of an orbit representative")
    p.add_argument("--function-file")
    p.set_defaults(handler=cmd_wavefront)

    p = sub.add_parser("cone", parents=[common], help="Rational asymptotic cone of coadjoint orbits")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--orbit", type=int, action="append", required=True)
    p.set_defaults(handler=cmd_cone)

    p = sub.add_parser("nmap", parents=[common], help="N map and wave front bounds (type A, ungraded)")
    p.add_argument("--limit", type=int, default=0)
    p.set_defaults(handler=cmd_nmap)

    p = sub.add_parser("verify", parents=[common], help="Run a named verification suite")
    p.add_argument("suite")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("suites", help="List verification suites")
    p.set_defaults(handler=cmd_suites)

    p = sub.add_parser("check-report", help="Verify a signed report")
    p.add_argument("file")
    p.add_argument("--public-key", help="Base64 Ed25519 public key (default: REPORT_ED25519_PUBLIC_B64)")
    p.set_defaults(handler=cmd_check_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        console.set_quiet(config.quiet)
        return args.handler(args, config)
    except WorkbenchError as e:
        console.failed(str(e))
        witness = getattr(e, "witness", None)
        if witness:
            console.error("witness", json.dumps(witness, sort_keys=True, default=str))
        return e.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
