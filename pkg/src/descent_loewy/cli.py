"""Command line front end.

Four subcommands: `loewy` prints the Loewy length of the descent
algebra, `verify` runs a named checking suite, `quiver` emits the face
algebra quiver or the invariant quiver, `orbits` tabulates the lattice
orbits.  Reports are deterministic: JSON payloads carry no timing and
every table is canonically ordered, so identical flags give identical
bytes.

Exit codes: 0 success, 2 a verification suite failed, 3 resource cap
(group too large, or the run needs --long-running), 64 usage error,
74 an output path could not be written.

Work projected beyond roughly ten minutes is refused without
--long-running: any rank seven or higher, group-convolution based
verification suites at rank six, and group-direct Loewy computation at
rank six.  DESCENT_LOEWY_CAP overrides the group materialization cap.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .arrangement import IntersectionLattice, build_face_semigroup
from .coxeter import GroupTooLargeError

USAGE_ERROR = 64
IO_ERROR = 74
VERIFY_FAILED = 2
RESOURCE_CAP = 3

CONVENTIONS = {
    "roots": "crystallographic-positive-v1",
    "orientation": "reduced-echelon-basis-v1",
}

SUITES = ("semigroup", "idempotents", "antiiso", "phi", "lemmas", "all")

PHI_MAX_RANK = 4


@dataclass
class RunReport:
    command: str
    system: dict
    payload: dict

    def to_json(self):
        doc = {
            "command": self.command,
            "system": self.system,
            "conventions": CONVENTIONS,
            "payload": self.payload,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _gate(args, reason_rank6=None):
    """Refuse long work unless --long-running was passed."""
    if args.long_running:
        return None
    if args.rank >= 7:
        return "rank 7 and above"
    if reason_rank6 and args.rank >= 6:
        return reason_rank6
    return None


def _validate_system(args):
    if args.family not in ("A", "B", "D"):
        return "family must be A, B or D"
    if args.rank < 1:
        return "rank must be positive"
    if args.family == "D" and args.rank < 2:
        return "type D needs rank at least 2"
    return None


# ---------------------------------------------------------------------------
# subcommands


def cmd_loewy(args):
    from .descent import loewy_length_descent

    gate = _gate(args, "group-direct method at rank 6"
                 if args.method == "group-direct" else None)
    if gate:
        print(f"refusing without --long-running: {gate}", file=sys.stderr)
        return RESOURCE_CAP, None, []
    faces = None
    result = loewy_length_descent(args.family, args.rank, method=args.method,
                                  faces=faces)
    lines = [
        f"descent algebra of {args.family}{args.rank}: "
        f"dimension {result['dim']}",
        f"Loewy length {result['loewy_length']}",
        "radical power dimensions "
        + (" ".join(str(d) for d in result["radical_power_dims"]) or "none"),
        f"semisimple quotient dimension {result['semisimple_dim']}",
        f"method {result['method']}",
    ]
    return 0, dict(result), lines


def _suite_semigroup(fs, lat):
    import numpy as np

    checks = {"faces": fs.face_count,
              "face_count_matches_parabolic_sum": True}  # enforced on build
    if fs.face_count <= 2048:
        T = fs.product_table()
        ar = np.arange(fs.face_count)
        checks["idempotent_faces"] = bool((T[ar, ar] == ar).all())
        ok_assoc = all(
            np.array_equal(T[T[i]], T[i][T]) for i in range(fs.face_count))
        checks["associative"] = ok_assoc
        ok_absorb = all(
            np.array_equal(T[T[i], i], T[i]) for i in range(fs.face_count))
        checks["xyx_equals_xy"] = ok_absorb
    else:
        rng = np.random.default_rng(20250819)
        trip = rng.integers(0, fs.face_count, size=(20000, 3))
        ok = True
        for x, y, z in trip:
            xy = fs.product_ids(int(x), int(y))
            yz = fs.product_ids(int(y), int(z))
            if fs.product_ids(xy, int(z)) != fs.product_ids(int(x), yz):
                ok = False
        checks["associative_sampled"] = ok
    checks["supports_join"] = True
    sup = fs.support_masks()
    rng = np.random.default_rng(7)
    for _ in range(500):
        i, j = (int(v) for v in rng.integers(0, fs.face_count, size=2))
        if int(sup[fs.product_ids(i, j)]) != int(sup[i]) & int(sup[j]):
            checks["supports_join"] = False
    return checks


def _suite_idempotents(fs, lat):
    from .descent import verify_direct_idempotents
    from .facealg import (check_idempotent_family, orbit_idempotents,
                          support_idempotents)

    e, lam = support_idempotents(fs, lat)
    rep1 = check_idempotent_family(fs, e)
    eps = orbit_idempotents(fs, lat, e)
    rep2 = check_idempotent_family(fs, eps)
    rep3, _, _ = verify_direct_idempotents(fs.system)
    return {
        "support_idempotents_complete": all(
            bool(rep1[k]) for k in ("idempotent", "orthogonal",
                                    "sum_is_identity", "all_nonzero")),
        "orbit_idempotents_complete": all(
            bool(rep2[k]) for k in ("idempotent", "orthogonal",
                                    "sum_is_identity", "all_nonzero")),
        "descent_idempotents_complete": all(
            bool(rep3[k]) for k in ("idempotent", "orthogonal",
                                    "sum_is_identity", "all_nonzero",
                                    "primitive_by_count")),
        "support_count": len(e),
        "orbit_count": len(eps),
        "descent_count": rep3["count"],
    }


def _suite_antiiso(fs, lat):
    from .descent import verify_anti_isomorphism

    report = verify_anti_isomorphism(fs.system, faces=fs)
    return {
        "product_reversal_matches": report["ok"],
        "pairs_checked": report["pairs_checked"],
        "identity_matches": report["identity_matches"],
        "dims_equal": report["dims_equal"],
    }


def _suite_phi(fs, lat):
    from .quiverphi import verify_phi

    report = verify_phi(fs, lat)
    return {
        "surjective": report["surjective"],
        "equivariant": report["equivariant"],
        "representative_independent": report["representative_independent"],
        "kernel_matches": report["kernel_element_maps_to_zero"]
        and report["kernel_dimension_matches"],
    }


def _suite_lemmas(fs, lat):
    from .facealg import invariant_algebra
    from .quiverphi import certify_typeD, invariant_quiver

    q = invariant_quiver(fs, lat)
    top_orbit = next(i for i, orb in enumerate(lat.orbits)
                     if lat.top_id in orb)
    arrows = [(s, t) for (s, t), mult in q.arrows.items() if mult]
    out = {
        "acyclic": q.is_acyclic(),
        "top_orbit_out_degree_zero": q.out_degree(top_orbit) == 0,
        "arrows_descend": all(
            s != t and any(lat.leq[x, y]
                           for x in lat.orbits[t] for y in lat.orbits[s])
            for s, t in arrows),
        "loewy_bounded_by_longest_path":
            invariant_algebra(fs).loewy_length()
            <= 1 + q.longest_path_length(),
    }
    if fs.system.family == "D":
        reps = [min(orb) for orb in lat.orbits]
        even_ok, odd_ok = True, True
        cover_orbits = {(next(i for i, o in enumerate(lat.orbits) if up in o),
                         next(i for i, o in enumerate(lat.orbits) if lo in o))
                        for lo, up in lat.covers}
        for s, t in arrows:
            es, _ = lat.even_odd(reps[s])
            et, _ = lat.even_odd(reps[t])
            if et > es:
                even_ok = False
            if (s, t) in cover_orbits and lat.even_odd(reps[s])[1] != 1:
                odd_ok = False
        cert = certify_typeD(fs.system.rank, lat=lat, quiver=q)
        out["even_blocks_never_increase"] = even_ok
        out["cover_arrows_have_one_odd_block"] = odd_ok
        out["certified_within_bound"] = cert["within_bound"]
        out["certified_arrows"] = cert["arrows_cross_checked"]
        out["longest_path"] = q.longest_path_length()
        out["longest_path_bound"] = cert["bound"]
    return out


def cmd_verify(args):
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; choose from "
              f"{', '.join(SUITES)}", file=sys.stderr)
        return USAGE_ERROR, None, []
    heavy = ("group tables for the antiiso, idempotents, lemmas or "
             "full suite at rank 6")
    needs_group = args.suite in ("antiiso", "idempotents", "lemmas", "all")
    gate = _gate(args, heavy if needs_group else None)
    if gate:
        print(f"refusing without --long-running: {gate}", file=sys.stderr)
        return RESOURCE_CAP, None, []
    if args.suite == "phi" and args.rank > PHI_MAX_RANK:
        print("the phi suite materializes all of kF and is limited to "
              f"rank {PHI_MAX_RANK}", file=sys.stderr)
        return USAGE_ERROR, None, []

    fs = build_face_semigroup(args.family, args.rank)
    lat = IntersectionLattice(fs)
    runners = {
        "semigroup": _suite_semigroup,
        "idempotents": _suite_idempotents,
        "antiiso": _suite_antiiso,
        "phi": _suite_phi,
        "lemmas": _suite_lemmas,
    }
    names = list(runners) if args.suite == "all" else [args.suite]
    payload = {"suites": {}}
    lines = []
    failed = None
    for name in names:
        if name == "phi" and args.rank > PHI_MAX_RANK:
            payload["suites"][name] = {"skipped": "rank above 4"}
            lines.append(f"{name}: skipped (rank above {PHI_MAX_RANK})")
            continue
        checks = runners[name](fs, lat)
        payload["suites"][name] = checks
        bad = [k for k, v in checks.items() if v is False]
        status = "pass" if not bad else f"FAIL ({bad[0]})"
        extra = f" on {checks['faces']} faces" if "faces" in checks else ""
        lines.append(f"{name}: {status}, "
                     f"{sum(1 for v in checks.values() if v is True)} checks"
                     f"{extra}")
        if bad and failed is None:
            failed = (name, bad[0])
    if failed:
        lines.append(f"first failure: suite {failed[0]}, check {failed[1]}")
        return VERIFY_FAILED, payload, lines
    return 0, payload, lines


def cmd_quiver(args):
    from .quiverphi import build_quiver, invariant_quiver, quiver_dot

    gate = _gate(args, "invariant quiver at rank 6"
                 if args.invariant else None)
    if gate:
        print(f"refusing without --long-running: {gate}", file=sys.stderr)
        return RESOURCE_CAP, None, []
    fs = build_face_semigroup(args.family, args.rank)
    lat = IntersectionLattice(fs)
    lines = []
    if args.invariant:
        q = invariant_quiver(fs, lat)
        name = "invariant"
        classes, _ = fs.system.parabolic_classes()
        lines.append(
            f"vertex count {len(q.vertices)} = lattice orbit count; "
            f"parabolic classes {len(classes)}; "
            f"{'equal' if len(classes) == len(q.vertices) else 'UNEQUAL'}")
    else:
        q = build_quiver(lat)
        name = "faces"
    lines.insert(0, f"{name} quiver of {args.family}{args.rank}: "
                 f"{len(q.vertices)} vertices, {q.arrow_count()} arrows")
    arrow_rows = sorted(
        [s, t, m] for (s, t), m in q.arrows.items() if m)
    for s, t, m in arrow_rows[:40]:
        mult = f" x{m}" if m > 1 else ""
        lines.append(f"  {q.labels[s]} -> {q.labels[t]}{mult}")
    if len(arrow_rows) > 40:
        lines.append(f"  ... {len(arrow_rows) - 40} more")
    payload = {
        "kind": name,
        "vertex_count": len(q.vertices),
        "arrow_count": q.arrow_count(),
        "vertices": list(q.labels),
        "arrows": arrow_rows,
        "longest_path": q.longest_path_length(),
    }
    dot = quiver_dot(q, name=name)
    return 0, payload, lines, dot


def cmd_orbits(args):
    gate = _gate(args)
    if gate:
        print(f"refusing without --long-running: {gate}", file=sys.stderr)
        return RESOURCE_CAP, None, []
    from .quiverphi import vertex_label

    fs = build_face_semigroup(args.family, args.rank)
    lat = IntersectionLattice(fs)
    rows = []
    for i, orb in enumerate(lat.orbits):
        rep = min(orb)
        lam = int(sum(1 for s in lat.face_supp if s == rep))
        row = {
            "orbit": i,
            "size": len(orb),
            "dim": lat.dims[rep],
            "lam": lam,
            "faces": lam * len(orb),
            "label": vertex_label(lat, rep),
        }
        if fs.system.family in ("B", "D"):
            blocks, central = lat.shape(rep)
            even, odd = lat.even_odd(rep)
            row.update(shape=list(blocks), central=central,
                       even_blocks=even, odd_blocks=odd)
        rows.append(row)
    lines = [f"lattice of {args.family}{args.rank}: {lat.size} subspaces, "
             f"{len(lat.orbits)} orbits"]
    for row in rows:
        extra = ""
        if "shape" in row:
            extra = (f"  blocks {tuple(row['shape'])} central"
                     f" {row['central']} even {row['even_blocks']}"
                     f" odd {row['odd_blocks']}")
        lines.append(f"  orbit {row['orbit']:3d} size {row['size']:5d} "
                     f"dim {row['dim']} lam {row['lam']:4d}  "
                     f"{row['label']}{extra}")
    return 0, {"orbit_count": len(lat.orbits), "orbits": rows}, lines


# ---------------------------------------------------------------------------
# entry point


def _build_parser():
    parser = _Parser(prog="descent-loewy",
                     description="Descent algebra Loewy lengths and quivers "
                                 "for Coxeter groups of types A, B and D.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("family", choices=["A", "B", "D"])
        p.add_argument("rank", type=int)
        p.add_argument("--json", metavar="PATH",
                       help="write the machine readable report here")
        p.add_argument("--threads", type=int, default=1,
                       help="worker cap (reserved; computations run "
                            "sequentially)")
        p.add_argument("--long-running", action="store_true",
                       help="allow work projected beyond ten minutes")

    p = sub.add_parser("loewy", help="Loewy length of the descent algebra")
    common(p)
    p.add_argument("--method", choices=["pullback", "group-direct"],
                   default="pullback")

    p = sub.add_parser("verify", help="run a checking suite")
    p.add_argument("suite", choices=list(SUITES))
    common(p)

    p = sub.add_parser("quiver", help="face algebra or invariant quiver")
    common(p)
    p.add_argument("--invariant", action="store_true",
                   help="quiver of the invariant subalgebra on L/W")
    p.add_argument("--dot", metavar="PATH", help="write Graphviz source here")

    p = sub.add_parser("orbits", help="lattice orbit table")
    common(p)
    return parser


def _write(path, text):
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {path}: {exc}", file=sys.stderr)
        return False
    return True


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    bad = _validate_system(args)
    if bad:
        print(f"descent-loewy: error: {bad}", file=sys.stderr)
        return USAGE_ERROR

    handlers = {"loewy": cmd_loewy, "verify": cmd_verify,
                "quiver": cmd_quiver, "orbits": cmd_orbits}
    start = time.monotonic()
    try:
        result = handlers[args.command](args)
    except GroupTooLargeError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return RESOURCE_CAP
    wall_ms = int(1000 * (time.monotonic() - start))

    code, payload, lines = result[0], result[1], result[2]
    dot = result[3] if len(result) > 3 else None
    for line in lines:
        print(line)
    if code == 0:
        print(f"wall time {wall_ms} ms")
    if code == 0 and payload is not None:
        report = RunReport(
            command=args.command,
            system={"family": args.family, "rank": args.rank},
            payload=payload)
        if args.json and not _write(args.json, report.to_json()):
            return IO_ERROR
        if dot is not None and getattr(args, "dot", None) \
                and not _write(args.dot, dot):
            return IO_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
