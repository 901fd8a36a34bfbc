"""Command-line front end: run a batch export from a manifest file."""

import argparse
import json
import sys

from . import export as export_mod


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="tetexport",
        description="Export gluing tables, horoball diagrams and homology"
                    " matrices for tetrahedral census manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("export", help="run a batch export")
    p.add_argument("manifest", help="ExportManifest JSON file")
    p.add_argument("--out-dir", help="override the manifest output directory")
    args = parser.parse_args(argv)

    try:
        with open(args.manifest) as f:
            manifest = json.load(f)
        doc = export_mod.export(manifest, out_dir=args.out_dir)
    except (OSError, ValueError, KeyError, RuntimeError,
            json.JSONDecodeError) as exc:
        json.dump({"error": str(exc)}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 1
    json.dump({"exported": [m["name"] for m in doc["manifolds"]]},
              sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
