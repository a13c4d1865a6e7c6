"""Acoustic-only (m1) vs fused (full) DER on synthetic conversations.

Example::

    python scripts/compare_modes.py --seeds 0:50 --separation 3 --noise-std 1.0 --nu 8
"""
import argparse
import json
import time

import numpy as np

from lexdiar.pipeline import PipelineConfig, diarize
from lexdiar.scoring import compute_der
from lexdiar.synth import SynthSpec, generate


def run_one(spec: SynthSpec, mode: str, **cfg):
    conv = generate(spec)
    t0 = time.perf_counter()
    res = diarize(PipelineConfig(mode=mode, **cfg), conv.segments, conv.embeddings, conv.words, spec.recording_id)
    elapsed = time.perf_counter() - t0
    der = compute_der(conv.reference(), res.entries, collar=cfg.get("collar", 0.25)).der
    return der, res, elapsed


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", default="0:50")
    ap.add_argument("--speakers", type=int, default=2)
    ap.add_argument("--duration", type=float, default=300.0)
    ap.add_argument("--separation", type=float, default=3.0)
    ap.add_argument("--noise-std", type=float, default=1.0)
    ap.add_argument("--nu", type=int, default=8)
    ap.add_argument("--num-speakers", type=int, default=None)
    ap.add_argument("--json", help="write per-seed rows here")
    args = ap.parse_args()

    lo, hi = (int(x) for x in args.seeds.split(":"))
    rows = []
    for seed in range(lo, hi):
        spec = SynthSpec(
            seed=seed,
            num_speakers=args.speakers,
            duration=args.duration,
            cluster_separation=args.separation,
            embedding_noise_std=args.noise_std,
        )
        d1, r1, _ = run_one(spec, "m1", num_speakers=args.num_speakers)
        d3, r3, t3 = run_one(spec, "full", num_speakers=args.num_speakers, nu=args.nu)
        rows.append({"seed": seed, "der_m1": d1, "der_full": d3, "c": r3.threshold,
                     "k_m1": r1.num_speakers, "k_full": r3.num_speakers, "seconds_full": t3})
        print(f"seed {seed:4d}  m1 {100 * d1:6.2f}%  full {100 * d3:6.2f}%  c={r3.threshold}  "
              f"k={r1.num_speakers}/{r3.num_speakers}  {t3:.1f}s", flush=True)
    m1 = np.array([r["der_m1"] for r in rows])
    full = np.array([r["der_full"] for r in rows])
    print(f"mean DER m1 {100 * m1.mean():.2f}%  full {100 * full.mean():.2f}%  "
          f"gain {100 * (m1.mean() - full.mean()):.2f} pts  full wins {np.mean(full < m1):.0%}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
