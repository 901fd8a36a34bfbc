"""Batch export of fixture files for tetrahedral census manifolds.

For every manifold in the manifest this writes, per triangulation, the
gluing-table JSON and one horoball-diagram JSON per cusp, plus a homology
presentation matrix and a meta.json with cusp symmetry classes, maximal
cusp volumes and the cusp relabeling onto the first (default)
triangulation.  A manifest.json usable by the analysis package is written
at the output root.
"""

import json
import os

from . import develop, isosig, triang

DEFAULT_CUTOFF = 0.05
_VOLUME_TOL = 1e-3


class ExportError(RuntimeError):
    pass


def _write(path, doc):
    with open(path, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


def homology_json(table):
    rows = triang.homology_presentation(table)
    return {"rows": len(rows), "cols": len(rows[0]),
            "entries": [x for row in rows for x in row]}


def cusp_map_by_volume(volumes, ref_volumes, sym_classes):
    """Relabeling of this triangulation's cusps onto reference labels.

    Cusps are matched by maximal cusp volume, which is an isometry
    invariant; ties are broken arbitrarily inside a matching volume, so
    the map is only canonical up to symmetry of the reference labels.
    Returns None if no volume-preserving bijection exists.
    """
    if len(volumes) != len(ref_volumes):
        return None
    taken = [False] * len(ref_volumes)
    out = [None] * len(volumes)
    for c in sorted(range(len(volumes)), key=lambda c: volumes[c]):
        cands = [r for r in range(len(ref_volumes)) if not taken[r]
                 and abs(volumes[c] - ref_volumes[r]) < _VOLUME_TOL]
        if not cands:
            return None
        out[c] = cands[0]
        taken[cands[0]] = True
    return out


def export_manifold(record, out_dir, cutoff=DEFAULT_CUTOFF):
    """Export one manifold record {name, census_index?, signatures}."""
    name = record["name"]
    sigs = record["signatures"]
    mdir = os.path.join(out_dir, name)
    os.makedirs(mdir, exist_ok=True)

    tri_entries = []
    ref_volumes = None
    num_cusps = None
    for idx, sig in enumerate(sigs):
        table = isosig.decode(sig)
        classes = triang.cusp_classes(table)
        if num_cusps is None:
            num_cusps = len(classes)
        elif num_cusps != len(classes):
            raise ExportError("%s: triangulations disagree on cusp count"
                              % name)
        gpath = "%s/tri%d_gluing.json" % (name, idx)
        _write(os.path.join(out_dir, gpath),
               isosig.gluing_json(sig, name))
        diagrams = {}
        volumes = []
        for cusp in range(len(classes)):
            diag = develop.cusp_diagram(table, cusp, name,
                                        export_cutoff=cutoff)
            volumes.append(diag["cusp_volume"])
            dpath = "%s/tri%d_cusp%d.json" % (name, idx, cusp)
            _write(os.path.join(out_dir, dpath), diag)
            diagrams[str(cusp)] = dpath
        if idx == 0:
            ref_volumes = volumes
            cusp_map = list(range(num_cusps))
        else:
            sym = triang.cusp_symmetry_classes(table)
            cusp_map = cusp_map_by_volume(volumes, ref_volumes, sym)
            if cusp_map is None:
                raise ExportError("%s tri%d: cusp volumes do not match the"
                                  " default triangulation" % (name, idx))
        tri_entries.append({
            "signature": sig,
            "gluing_table": gpath,
            "diagrams": diagrams,
            "cusp_map": cusp_map,
            "cusp_symmetry_classes": triang.cusp_symmetry_classes(table),
            "maximal_cusp_volumes": volumes,
        })

    table0 = isosig.decode(sigs[0])
    hpath = "%s/homology.json" % name
    _write(os.path.join(out_dir, hpath), homology_json(table0))

    meta = {
        "name": name,
        "census_index": record.get("census_index"),
        "num_cusps": num_cusps,
        "export_cutoff": cutoff,
        # remaining cusps are maximized in ascending label order after
        # the cusp at infinity
        "maximization_order": "infinity cusp first, then ascending labels",
        "homology_matrix": hpath,
        "triangulations": tri_entries,
    }
    for key in ("census_index_inferred", "notes"):
        if key in record:
            meta[key] = record[key]
    _write(os.path.join(mdir, "meta.json"), meta)
    return meta


def export(manifest, out_dir=None):
    """Run a full export; returns the classify-ready manifest document."""
    cutoff = manifest.get("cutoff", DEFAULT_CUTOFF)
    if not 0 < cutoff < 0.1:
        raise ExportError("cutoff must lie in (0, 0.1); the analysis side"
                          " filters at 0.1")
    out_dir = out_dir or manifest["out_dir"]
    os.makedirs(out_dir, exist_ok=True)
    manifolds = []
    for record in manifest["manifolds"]:
        meta = export_manifold(record, out_dir, cutoff)
        manifolds.append({
            "name": meta["name"],
            "census_index": meta["census_index"],
            "num_cusps": meta["num_cusps"],
            "homology_matrix": meta["homology_matrix"],
            "triangulations": [
                {"gluing_table": t["gluing_table"],
                 "diagrams": t["diagrams"],
                 "cusp_map": t["cusp_map"]}
                for t in meta["triangulations"]
            ],
        })
    doc = {"manifolds": manifolds, "export_cutoff": cutoff}
    _write(os.path.join(out_dir, "manifest.json"), doc)
    return doc
