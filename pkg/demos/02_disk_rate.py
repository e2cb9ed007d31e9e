"""Measure how fast the quantized symbol approaches the exact disk DN map as h shrinks.

Run: python3 demos/02_disk_rate.py  (about one second)
"""
from pathlib import Path

from elastic_dtn import harness

cfg = harness.load_config(Path(__file__).resolve().parents[1] / "configs" / "converge-disk.json")
rep = harness.run_converge_disk(cfg)

cols, rows = rep.tables["h_sweep"]
print("theta = 0.5, error against h")
print(f"{'h':>12s} {'per-mode sup':>14s} {'operator':>12s}")
for r in rows:
    print(f"{r[0]:12.6f} {r[2]:14.3e} {r[4]:12.3e}")

cols, rows = rep.tables["theta_sweep"]
print("\nh = 2^-6, error * theta^2 against theta (flat means the theta^-2 envelope holds)")
for r in rows:
    print(f"theta = {r[1]:.1f}  {r[2] * r[1] ** 2:.3e}  {r[4] * r[1] ** 2:.3e}  in regime: {bool(r[5])}")

print()
print("\n".join(rep.lines()))
