"""Pick the maximum utterance length on held-out development seeds.

Development seeds start at 1000 so they never overlap the seeds used by the
acceptance tests.
"""
import argparse

import numpy as np

from compare_modes import run_one
from lexdiar.synth import SynthSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", default="1000:1008")
    ap.add_argument("--separation", type=float, default=3.0)
    ap.add_argument("--noise-std", type=float, default=1.0)
    ap.add_argument("--nu-range", default="2:9")
    args = ap.parse_args()
    lo, hi = (int(x) for x in args.seeds.split(":"))
    nu_lo, nu_hi = (int(x) for x in args.nu_range.split(":"))

    specs = [SynthSpec(seed=s, cluster_separation=args.separation, embedding_noise_std=args.noise_std)
             for s in range(lo, hi)]
    base = np.mean([run_one(s, "m1")[0] for s in specs])
    print(f"m1 mean DER {100 * base:.2f}%")
    best = None
    for nu in range(nu_lo, nu_hi + 1):
        der = np.mean([run_one(s, "full", nu=nu)[0] for s in specs])
        print(f"nu={nu}  full mean DER {100 * der:.2f}%", flush=True)
        if best is None or der < best[1]:
            best = (nu, der)
    print(f"best nu={best[0]}")


if __name__ == "__main__":
    main()
