"""
Benchmark sphere-mean rules against a closed form
对比球面平均规则的精度与耗时

The mean of |y|^2 over the sphere S(x, r) is |x|^2 + r^2 in every dimension,
so each rule can be scored by its actual error next to its reported bound.

Usage:
  python scripts/benchmark_quadrature.py --dim 3 --radius 1.0 --output reports/benchmark.json
"""
import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np
from tqdm import tqdm

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.fields import squared_norm
from src.quadrature import QuadratureScheme, SchemeKind, default_scheme, sphere_mean


def build_schemes(dim: int, seed: int):
    schemes = [default_scheme(dim, seed)]
    if dim == 2:
        schemes += [QuadratureScheme(SchemeKind.UNIFORM_CIRCLE, 2 ** k) for k in range(3, 13)]
    if dim == 3:
        schemes += [QuadratureScheme(SchemeKind.PRODUCT_GAUSS_SPHERE, 2 ** k) for k in range(3, 9)]
    schemes += [QuadratureScheme(SchemeKind.MONTE_CARLO_SPHERE, 2 ** k, seed=seed) for k in range(10, 19, 2)]
    return schemes


def benchmark(dim: int, radius: float, seed: int, runs: int):
    field = squared_norm(dim)
    center = np.zeros(dim)
    center[0] = 0.5
    exact = float(center @ center) + radius ** 2

    results = []
    for scheme in tqdm(build_schemes(dim, seed), desc="schemes"):
        times = []
        for _ in range(runs):
            t0 = time.perf_counter()
            estimate = sphere_mean(field, center, radius, scheme)
            times.append((time.perf_counter() - t0) * 1000.0)
        results.append({
            'kind': scheme.kind.value,
            'resolution': scheme.resolution,
            'value': estimate.value,
            'error_bound': estimate.error_bound,
            'abs_error': abs(estimate.value - exact),
            'avg_ms': sum(times) / len(times),
            'p50_ms': sorted(times)[len(times) // 2],
        })
    return exact, results


def main():
    parser = argparse.ArgumentParser(description='Benchmark sphere-mean rules')
    parser.add_argument('--dim', type=int, default=3, help='Dimension (2 or more)')
    parser.add_argument('--radius', type=float, default=1.0, help='Sphere radius')
    parser.add_argument('--seed', type=int, default=0, help='Seed of the Monte Carlo rules')
    parser.add_argument('--runs', type=int, default=5, help='Timed repetitions per rule')
    parser.add_argument('--output', help='Optional JSON file for the results')
    args = parser.parse_args()

    if args.dim < 2:
        print("✗ Error: --dim must be at least 2")
        sys.exit(2)

    exact, results = benchmark(args.dim, args.radius, args.seed, args.runs)

    print(f"\nexact mean: {exact:.12g}")
    print(f"{'kind':<22}{'resolution':>12}{'abs_error':>14}{'error_bound':>14}{'avg_ms':>10}")
    for row in results:
        print(
            f"{row['kind']:<22}{row['resolution']:>12}"
            f"{row['abs_error']:>14.3e}{row['error_bound']:>14.3e}{row['avg_ms']:>10.2f}"
        )
        if row['abs_error'] > row['error_bound'] + 1e-12:
            print(f"  ⚠ reported bound does not cover the actual error")

    if args.output:
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({'exact': exact, 'results': results}, indent=2), encoding="utf-8")
        print(f"\n✓ Results written to {path}")


if __name__ == '__main__':
    main()
