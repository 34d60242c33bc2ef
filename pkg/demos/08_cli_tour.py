"""
Driving everything from the command line
========================================

Every capability is exposed as a subcommand with JSON or CSV output and a
seed that makes reruns byte-identical.  This calls the entry point
in-process; from a shell, replace cli_main([...]) with `spheredesign ...`.
"""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from spheredesign.cli import main as cli_main

tmp = Path(tempfile.mkdtemp())

print("== verify a bundled design ==")
cli_main(["verify-design", "--name", "icosahedron"])

print("\n== probe a file design's actual strength ==")
cli_main(["design-info", "--name", "sf008.00045", "--probe", "10",
          "--out", str(tmp / "info.json")])
info = json.loads((tmp / "info.json").read_text())
print(f"verified strength {info['verified_strength']}, "
      f"first failing degree {info['verified_strength'] + 1}")

print("\n== fit coefficients, CSV round trip ==")
cli_main(["fit", "--design", "sf020.00222", "--degree", "6",
          "--function", "harmonic:4,2", "--format", "csv",
          "--out", str(tmp / "fit.csv")])
print((tmp / "fit.csv").read_text().splitlines()[22])

print("\n== deficiency bound for a smoothness ball ==")
cli_main(["bound", "--class", "sobolev", "--design", "sf020.00222",
          "--degree", "9", "--s", "2", "--radius", "2", "--seed", "11"])

print("\n== reproducibility: identical bytes for identical seeds ==")
argv = ["simulate", "--model", "regression", "--design", "sf008.00045",
        "--function", "harmonic:2,1", "--seed", "42", "--format", "csv"]
a, b = tmp / "a.csv", tmp / "b.csv"
cli_main(argv + ["--out", str(a)])
cli_main(argv + ["--out", str(b)])
print(f"two runs identical: {a.read_bytes() == b.read_bytes()}")

# the installed console script does the same thing through the shell
rc = subprocess.run([sys.executable, "-m", "spheredesign", "--version"],
                    capture_output=True, text=True)
print(f"\nmodule entry point reports version {rc.stdout.strip()}")
