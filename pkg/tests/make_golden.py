"""Regenerate the committed CLI golden files: ``python tests/make_golden.py``."""
from pathlib import Path

from radiant.cli import main

GOLDEN = Path(__file__).with_name("golden")
CANONICAL_K0 = ("0.6", "0.4", "0.2", "0")
WINDOW_OMEGA = "0.65"
WINDOW_PHI_GRID = "37"
SPECTRUM_POINTS = "11"


def window_args(k0, out):
    return ["window", "--omega0", "1", "--k0", k0, "--Omega", WINDOW_OMEGA,
            "--phi-grid", WINDOW_PHI_GRID, "--out", str(out)]


def spectrum_args(k0, out):
    return ["spectrum", "--omega0", "1", "--k0", k0, "-d", "1",
            "--points", SPECTRUM_POINTS, "--out", str(out)]


def golden_name(kind, k0):
    return f"{kind}_k0_{k0.replace('.', 'p')}.csv"


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for k0 in CANONICAL_K0:
        assert main(window_args(k0, GOLDEN / golden_name("window", k0))) == 0
        assert main(spectrum_args(k0, GOLDEN / golden_name("spectrum", k0))) == 0
