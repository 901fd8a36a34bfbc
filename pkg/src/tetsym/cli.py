"""Command-line front end.

Subcommands wrap the library operations one-to-one and print JSON reports
on stdout.  Exit codes: 0 success (test positive where applicable), 2 test
negative, 1 error.  The classify subcommand runs the full per-cusp pipeline
over a fixture manifest.
"""

import argparse
import json
import sys

from . import cuspgeom, homology, orbtri, tetglue
from .constants import DSEQ_236_2222, RIGID_CUSP_236


def _load_json(path):
    with open(path) as f:
        return json.load(f)


def _emit(report):
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _load_dseq(path):
    return orbtri.DestinationSequence.from_json(_load_json(path))


def _load_diagram(path, args):
    diag = cuspgeom.CuspDiagram.from_json(_load_json(path))
    diag.validate(fullsize_cutoff=args.fullsize_cutoff)
    return diag


def cmd_validate(args):
    report = orbtri.validate(_load_dseq(args.path))
    _emit(report.to_json())
    return 0 if report.ok else 2


def cmd_cusps(args):
    seq = _load_dseq(args.path)
    report = orbtri.validate(seq)
    if not report.ok:
        _emit(report.to_json())
        return 1
    _emit({"cusps": orbtri.cusp_seqs(seq).to_json()})
    return 0


def cmd_covers(args):
    up = _load_dseq(args.up)
    down = _load_dseq(args.down)
    maps = orbtri.covers(up, down)
    up_cusps = orbtri.cusp_seqs(up)
    down_cusps = orbtri.cusp_seqs(down)
    report = {
        "count": len(maps),
        "covers": [
            {
                "phi": c.to_json(),
                "cusp_covers": [
                    {"up": list(a), "down": list(b)}
                    for a, b in orbtri.cusp_covers(c, up_cusps, down_cusps)
                ],
            }
            for c in maps
        ],
    }
    _emit(report)
    return 0 if maps else 2


def cmd_orbifoldize(args):
    tri = tetglue.parse_gluing_table(open(args.path).read())
    seq, pieces = tetglue.des_seq(tri)
    mc = tetglue.manifold_cusp_classes(tri)
    orb_cusps = orbtri.cusp_seqs(seq)
    labels = [tetglue.mfd_cusp_index(c, pieces, mc) for c in orb_cusps.classes]
    _emit({
        "sequence": seq.to_json(),
        "orbifold_cusps": orb_cusps.to_json(),
        "manifold_cusp_of_class": labels,
        "num_manifold_cusps": mc.num_cusps,
    })
    return 0


def _c0_choices(diag, args):
    centers = cuspgeom.full_sized_centers(diag, args.fullsize_cutoff)
    if args.exhaustive_c0:
        return list(centers.points)
    return [centers.points[0]]


def _run_symtest(diag, mode, args):
    if mode == "strong":
        run = lambda c0: cuspgeom.free_rot_strong(
            diag, args.tolerance, args.fullsize_cutoff, args.hdiff_cutoff, c0)
    elif mode == "weak":
        run = lambda c0: cuspgeom.free_rot_weak(
            diag, args.tolerance, args.fullsize_cutoff, args.hdiff_cutoff, c0)
    elif mode == "full3":
        def run(c0):
            cands = cuspgeom.centroid_strong(
                diag, args.tolerance, args.fullsize_cutoff,
                args.hdiff_cutoff, c0)
            return any(
                cuspgeom.full_packing_rotation_test(diag, c, 3, args.tolerance)
                for c in cands
            )
    else:
        raise ValueError("unknown mode %r" % mode)
    return run


def cmd_symtest(args):
    diag = _load_diagram(args.path, args)
    if args.mode == "order6":
        axes = cuspgeom.find_bad_order6_axes(
            diag, args.tolerance, args.hdiff_cutoff)
        result = bool(axes)
        _emit({
            "mode": "order6",
            "result": result,
            "axes": [{"center": [c.real, c.imag], "cusp": k} for c, k in axes],
        })
        return 0 if result else 2
    run = _run_symtest(diag, args.mode, args)
    per_c0 = []
    for c0 in _c0_choices(diag, args):
        per_c0.append({"c0": [c0.real, c0.imag], "result": run(c0)})
    results = {r["result"] for r in per_c0}
    report = {"mode": args.mode, "result": per_c0[0]["result"]}
    if args.exhaustive_c0:
        report["per_c0"] = per_c0
        report["c0_disagreement"] = len(results) > 1
    _emit(report)
    return 0 if report["result"] else 2


def cmd_homology(args):
    matrix = homology.IntMatrix.from_json(_load_json(args.path))
    summary, _, _ = homology.smith_normal_form(matrix)
    link = homology.is_homology_link(summary, args.cusps)
    _emit({
        "divisors": list(summary.divisors),
        "rank": summary.rank,
        "homology_link": link,
    })
    return 0 if link else 2


def _good_cover_cusps(tri, cusp_map):
    """Manifold cusps (default-triangulation labels) with a good cover.

    A good cover sends exactly one orbifold cusp class onto the rigid cusp
    of the reference two-cusped orbifold; the manifold cusp carrying that
    class is a hidden-symmetry candidate.  cusp_map translates this
    triangulation's cusp labels into the manifold's reference labels.
    """
    seq, pieces = tetglue.des_seq(tri)
    mc = tetglue.manifold_cusp_classes(tri)
    up_cusps = orbtri.cusp_seqs(seq)
    down_cusps = orbtri.cusp_seqs(DSEQ_236_2222)
    rigid = tuple(RIGID_CUSP_236)
    good = []
    for cover in orbtri.covers(seq, DSEQ_236_2222):
        hits = [up for up, down in
                orbtri.cusp_covers(cover, up_cusps, down_cusps)
                if tuple(down) == rigid]
        if len(hits) != 1:
            continue
        local = tetglue.mfd_cusp_index(hits[0], pieces, mc)
        good.append(cusp_map[local])
    return good


def _classify_manifold(record, fixture_dir, args):
    import os

    def path(p):
        return os.path.join(fixture_dir, p)

    diagrams = {}
    for tri_rec in record["triangulations"]:
        for cusp, rel in tri_rec.get("diagrams", {}).items():
            diagrams.setdefault(int(cusp), rel)
    results = {}
    strong = {}
    for cusp in range(record["num_cusps"]):
        if cusp not in diagrams:
            results[cusp] = {"verdict": "UNRESOLVED",
                             "evidence": "no cusp diagram in fixtures"}
            continue
        diag = _load_diagram(path(diagrams[cusp]), args)
        strong[cusp] = cuspgeom.free_rot_strong(
            diag, args.tolerance, args.fullsize_cutoff, args.hdiff_cutoff)
        if not strong[cusp]:
            results[cusp] = {"verdict": "NOT_EXCEPTIONAL",
                             "evidence": "free_rot_strong false"}

    good_cover = set()
    needs_cover = [c for c in strong if strong[c]]
    if needs_cover:
        for tri_rec in record["triangulations"]:
            tri = tetglue.parse_gluing_table(
                open(path(tri_rec["gluing_table"])).read())
            cusp_map = tri_rec.get("cusp_map")
            if cusp_map is None:
                cusp_map = list(range(record["num_cusps"]))
            good_cover.update(_good_cover_cusps(tri, cusp_map))

    for cusp in needs_cover:
        diag = _load_diagram(path(diagrams[cusp]), args)
        axes = cuspgeom.find_bad_order6_axes(
            diag, args.tolerance, args.hdiff_cutoff)
        if axes:
            results[cusp] = {
                "verdict": "E2",
                "evidence": "order-6 axis at %d site(s)" % len(axes),
            }
            continue
        cands = cuspgeom.centroid_strong(
            diag, args.tolerance, args.fullsize_cutoff, args.hdiff_cutoff)
        if len(cands) and not any(
                cuspgeom.full_packing_rotation_test(diag, c, 3, args.tolerance)
                for c in cands):
            results[cusp] = {
                "verdict": "E3",
                "evidence": "all %d order-3 candidates fail the full-packing"
                            " test" % len(cands),
            }
            continue
        if cusp in good_cover:
            single = len(needs_cover) == 1
            results[cusp] = {
                "verdict": "E1" if single else "E4",
                "evidence": "good cover onto the rigid cusp"
                            + ("" if single else
                               "; manifold has %d candidate cusps"
                               % len(needs_cover)),
            }
            continue
        results[cusp] = {"verdict": "UNRESOLVED",
                         "evidence": "no dispatching test fired"}
    return results


def cmd_classify(args):
    import os

    manifest = _load_json(os.path.join(args.fixture_dir, "manifest.json"))
    report = []
    errors = False
    # census-indexed manifolds first in index order, the rest by name
    for record in sorted(manifest["manifolds"],
                         key=lambda r: (r.get("census_index") is None,
                                        r.get("census_index") or 0,
                                        r["name"])):
        entry = {"manifold": record["name"],
                 "census_index": record.get("census_index")}
        try:
            results = _classify_manifold(record, args.fixture_dir, args)
            entry["cusps"] = {
                str(c): results[c] for c in sorted(results)
            }
        except (OSError, ValueError, KeyError, RuntimeError) as exc:
            entry["error"] = str(exc)
            errors = True
        report.append(entry)
    _emit({"classification": report})
    return 1 if errors else 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tetsym",
        description="Symmetry tests for tetrahedral link complements.",
    )
    parser.add_argument("--tolerance", type=float, default=cuspgeom.TOLERANCE)
    parser.add_argument("--fullsize-cutoff", type=float,
                        default=cuspgeom.FULLSIZE_CUTOFF)
    parser.add_argument("--hdiff-cutoff", type=float,
                        default=cuspgeom.HDIFF_CUTOFF)
    parser.add_argument("--exhaustive-c0", action="store_true",
                        help="run symmetry tests from every full-sized center")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a destination sequence")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cusps", help="cusp classes of a destination sequence")
    p.add_argument("path")
    p.set_defaults(func=cmd_cusps)

    p = sub.add_parser("covers", help="enumerate covers between sequences")
    p.add_argument("up")
    p.add_argument("down")
    p.set_defaults(func=cmd_covers)

    p = sub.add_parser("orbifoldize",
                       help="destination sequence of a gluing table")
    p.add_argument("path")
    p.set_defaults(func=cmd_orbifoldize)

    p = sub.add_parser("symtest", help="run a symmetry test on a cusp diagram")
    p.add_argument("path")
    p.add_argument("mode", choices=["strong", "weak", "full3", "order6"])
    p.set_defaults(func=cmd_symtest)

    p = sub.add_parser("homology", help="Smith form and homology-link check")
    p.add_argument("path")
    p.add_argument("cusps", type=int)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("classify", help="classify all fixtures in a directory")
    p.add_argument("fixture_dir")
    p.set_defaults(func=cmd_classify)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, RuntimeError,
            json.JSONDecodeError) as exc:
        _emit({"error": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
