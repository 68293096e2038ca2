"""Run the end-to-end pipeline over a few fields and levels and summarize.

Each run writes its JSON report to ``--out-dir`` and a one-line summary per
stage is printed. Level 7 satisfies the neatness condition over Q(sqrt5);
level 2 does not, and the nt stage reports the torsion witness.

    python3 scripts/run_pipeline.py --out-dir reports
"""
import argparse
import time
from dataclasses import replace
from pathlib import Path

from toroidal.pipeline import RunConfig, report_text, run_pipeline

RUNS = [
    RunConfig(D=5, level="7"),
    RunConfig(D=5, level="2"),
    RunConfig(D=2, level="3", c_ideal="dual-o"),
    RunConfig(D=13, level="5", s=2),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--samples", type=int, default=None, help="override fan completeness samples")
    args = ap.parse_args(argv)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for cfg in RUNS:
        if args.samples:
            cfg = replace(cfg, samples=args.samples)
        t0 = time.perf_counter()
        report = run_pipeline(cfg)
        dt = time.perf_counter() - t0
        name = f"D{cfg.D}_level{cfg.level}_s{cfg.s}.json"
        (out / name).write_text(report_text(report))
        print(f"{name}: {'passed' if report['passed'] else 'FAILED'} in {dt:.1f}s")
        for st in report["stages"]:
            bad = [c["name"] for c in st["checks"] if not c["passed"]]
            note = f"  failing: {', '.join(bad)}" if bad else ""
            print(f"  {st['stage']:<7} {st['status']}{note}")


if __name__ == "__main__":
    main()
