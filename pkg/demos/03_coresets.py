"""Coresets: compressing a dataset without moving its clustering cost.

A coreset is a small weighted sample whose weighted clustering cost
stands in for the full dataset's cost.  Sampling point i with
probability p_i and weight 1/(s * p_i) makes the weighted cost an
unbiased estimator for any fixed center set; what distinguishes
constructions is the variance, i.e. which points they make sure to
catch.

Two constructions are compared here:

- sensitivity sampling mixes each point's share of the clustering
  cost with the reciprocal of its cluster size, so small faraway
  clusters are always represented;
- lightweight sampling is half uniform, half proportional to the
  squared distance from the dataset mean.  It never looks at cluster
  structure, which a mirrored dataset can exploit: clusters placed
  symmetrically around the origin leave the mean at the origin and a
  tiny cluster sitting exactly there becomes invisible to it.
"""

import math

import numpy as np

from prone.baseline import cost_with_nearest, kmeanspp_seed, lloyd_iterate
from prone.coreset import (
    lightweight_distribution,
    sample_coreset,
    sensitivity_distribution,
)
from prone.dataset import gen_adversarial_gaussian
from prone.pipeline import ProneConfig, prone


def train_on(coreset, k, rng):
    model = kmeanspp_seed(coreset.points, k, z=2.0, rng=rng,
                          weights=coreset.weights)
    return lloyd_iterate(coreset.points, model, weights=coreset.weights)


def main() -> None:
    data = gen_adversarial_gaussian(3000, rng=42)
    pts = data.points
    k = 10
    s = math.ceil(0.01 * data.n)
    print(f"mirrored dataset: n={data.n}, d={data.d} -- eight clusters at")
    print("+-1000 on random axes plus a five-point cluster at the origin;")
    print(f"coresets keep {s} of {data.n} points (1%)\n")

    print("== 1. both estimators are unbiased for a fixed center set ==")
    rng = np.random.default_rng(0)
    model = kmeanspp_seed(pts, k, z=2.0, rng=rng)
    full = model.cost
    for name, dist in (
        ("sensitivity", sensitivity_distribution(pts, model)),
        ("lightweight", lightweight_distribution(pts)),
    ):
        est = [
            cost_with_nearest(cs.points, model.centers, z=2.0, weights=cs.weights)
            for cs in (sample_coreset(pts, dist, s, rng=rng) for _ in range(200))
        ]
        print(f"  {name:<12} mean/full = {np.mean(est) / full:6.3f} "
              f"(sd of single coreset {np.std(est) / full:5.3f})")

    print("\n== 2. but training on them is a different story ==")
    print(f"  {'trial':>5} {'sensitivity':>14} {'lightweight':>14} {'ratio':>8}")
    ratios = []
    for trial in range(5):
        ss = np.random.default_rng(trial)
        seeds = [int(v) for v in ss.integers(0, 2**63 - 1, size=4)]
        res = prone(data, ProneConfig(k=k, z=2.0, seed=seeds[0]))
        sens = sample_coreset(pts, sensitivity_distribution(pts, res.model),
                              s, rng=np.random.default_rng(seeds[1]))
        light = sample_coreset(pts, lightweight_distribution(pts),
                               s, rng=np.random.default_rng(seeds[1]))
        c_sens = cost_with_nearest(
            pts, train_on(sens, k, np.random.default_rng(seeds[2])).centers, z=2.0)
        c_light = cost_with_nearest(
            pts, train_on(light, k, np.random.default_rng(seeds[3])).centers, z=2.0)
        ratios.append(c_light / c_sens)
        print(f"  {trial:>5} {c_sens:>14.4g} {c_light:>14.4g} {ratios[-1]:>8.1f}")
    print(f"  median ratio {np.median(ratios):.1f}x: the lightweight sample")
    print("  almost never contains an origin point, so every model it")
    print("  trains pays the full squared distance for that cluster")


if __name__ == "__main__":
    main()
