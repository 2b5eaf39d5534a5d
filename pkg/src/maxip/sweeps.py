"""Oracle verification sweeps behind the command-line `verify` subcommand.

Each sweep runs a pipeline against the exhaustive oracles on seeded random
and planted instances and reports a machine-readable verdict. Trials are
independent; a thread pool of the requested size may evaluate them, and
results are assembled in submission order so the report never depends on
scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product

from . import core, crt, geometry, orpoly, powersum, protocol, sampling


def _run_indexed(worker, count: int, threads: int):
    if threads <= 1:
        return [worker(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(count)))


def _mixed_instance(trial: int, n: int, d: int, seed: int) -> core.Instance:
    if trial % 2 == 0:
        return core.gen_planted_orthogonal(n, d, seed + trial)
    return core.gen_random_instance(n, d, 0.5, seed + trial)


def sweep_geometry(n=16, d=6, ell=3, trials=100, seed=0, mode="both", threads=1):
    modes = (geometry.FURTHEST, geometry.CLOSEST) if mode == "both" else (mode,)

    def one(trial):
        inst = _mixed_instance(trial, n, d, seed)
        want, _ = core.orthogonal_decide(inst)
        return all(
            geometry.ov_to_geometry_decide(inst, ell, m) == want for m in modes
        )

    results = _run_indexed(one, trials, threads)
    mismatches = results.count(False)
    return {"pipeline": "geometry", "trials": trials, "mismatches": mismatches,
            "ok": mismatches == 0}


def sweep_crt(trials=0, seed=0, threads=1, pairs=((2, 3), (1, 4))):
    failures = 0
    checked = 0
    for block_bits, groups in pairs:
        red = crt.build_reduction(block_bits, groups)
        encodings = {}
        for bits in product((0, 1), repeat=red.input_bits):
            encodings[bits] = crt.apply_reduction(red, bits)
        for x, ex in encodings.items():
            for y, ey in encodings.items():
                checked += 1
                v = sum(a * b for a, b in zip(ex, ey))
                bit_dot = sum(a * b for a, b in zip(x, y))
                if (bit_dot == 0) != crt.witnesses_orthogonality(red, v):
                    failures += 1
                elif crt.decode_dot(red, v) != bit_dot:
                    failures += 1
    return {"pipeline": "crt", "pairs": list(map(list, pairs)), "checked": checked,
            "mismatches": failures, "ok": failures == 0}


def sweep_mult(n=32, d=16, t="2", r=3, trials=50, seed=0, threads=1):
    t = Fraction(t)

    def one(trial):
        inst = core.gen_random_instance(n, d, 0.4 + 0.2 * (trial % 3), seed + trial)
        opt, _ = core.max_ip_exact(inst)
        value = powersum.approx_mult(inst, t, r=r)
        if opt == 0:
            return value == 0
        return opt <= value <= t * opt

    results = _run_indexed(one, trials, threads)
    mismatches = results.count(False)
    return {"pipeline": "mult", "trials": trials, "mismatches": mismatches,
            "ok": mismatches == 0}


def sweep_additive(n=32, d=64, t=16, trials=50, seed=0, threads=1):
    t = Fraction(t)
    inst = core.gen_random_instance(n, d, 0.5, seed)
    opt, _ = core.max_ip_exact(inst)

    def one(trial):
        value = sampling.approx_additive(inst, t, seed + 1000 + trial)
        return abs(value - opt) <= t

    results = _run_indexed(one, trials, threads)
    failures = results.count(False)
    allowed = max(1, (2 * trials) // max(n, 1))
    return {"pipeline": "additive", "trials": trials, "failures": failures,
            "allowed": allowed, "ok": failures <= allowed}


def sweep_upp(n=8, d=4, ell=2, trials=50, seed=0, threads=1):
    def one(trial):
        inst = _mixed_instance(trial, n, d, seed)
        want, _ = core.orthogonal_decide(inst)
        return protocol.upp_reduction_decide(inst, ell) == want

    results = _run_indexed(one, trials, threads)
    mismatches = results.count(False)
    return {"pipeline": "upp", "trials": trials, "mismatches": mismatches,
            "ok": mismatches == 0}


def sweep_gap(n=4, d=4, eps="1/2", reps=1, trials=20, seed=0, threads=1):
    eps = Fraction(eps)

    def one(trial):
        inst = _mixed_instance(trial, n, d, seed)
        want, _ = core.orthogonal_decide(inst)
        gap = protocol.ov_to_maxip_gap(inst, eps, reps=reps)
        best = 0
        for gi in gap.instances:
            v, _ = core.max_ip_exact(gi)
            best = max(best, v)
        if want:
            return best == gap.threshold
        return best <= gap.soundness * gap.threshold

    results = _run_indexed(one, trials, threads)
    mismatches = results.count(False)
    return {"pipeline": "gap", "trials": trials, "mismatches": mismatches,
            "ok": mismatches == 0}


def sweep_pm1(n=4, d=2, eps="1/3", trials=20, seed=0, threads=1):
    eps = Fraction(eps)

    def one(trial):
        inst = _mixed_instance(trial, n, d, seed)
        want, _ = core.orthogonal_decide(inst)
        gi = orpoly.ov_to_pm1_gap(inst, eps)
        dots = [
            gi.pair_dot(i, j)
            for i in range(inst.a.n)
            for j in range(inst.b.n)
        ]
        if want:
            return max(dots) >= gi.threshold
        return max(abs(v) for v in dots) <= gi.threshold * eps

    results = _run_indexed(one, trials, threads)
    mismatches = results.count(False)
    return {"pipeline": "pm1", "trials": trials, "mismatches": mismatches,
            "ok": mismatches == 0}


SWEEPS = {
    "geometry": sweep_geometry,
    "crt": sweep_crt,
    "mult": sweep_mult,
    "additive": sweep_additive,
    "upp": sweep_upp,
    "gap": sweep_gap,
    "pm1": sweep_pm1,
}
