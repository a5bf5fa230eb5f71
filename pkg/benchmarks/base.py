# The MIT License (MIT)
# Copyright © 2023 dcsynth developers

# Permission is hereby granted, free of charge, to any person obtaining a copy of this software and associated
# documentation files (the “Software”), to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense, and/or sell copies of the Software,
# and to permit persons to whom the Software is furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in all copies or substantial portions of
# the Software.

# THE SOFTWARE IS PROVIDED “AS IS”, WITHOUT WARRANTY OF ANY KIND, EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO
# THE WARRANTIES OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION
# OF CONTRACT, TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER
# DEALINGS IN THE SOFTWARE.


"""Big-scale transfer line sweep: W = C in 1..4, M growing until the engine gives up.

    python benchmarks/base.py MAX_MACHINES [STEP] [CSV]

Long-running and opt-in. Rows are appended in order; a row that hits a cap stops the sweep
for its W = C value.
"""

import sys
import bittensor as bt
from tqdm import tqdm

from dcsynth.base.engine import Verdict
from dcsynth.bench import TlConfig, run_row, write_csv


def run():
    MAX_MACHINES = int(sys.argv[1])
    STEP = int(sys.argv[2]) if len(sys.argv) > 2 else 50
    CSV = sys.argv[3] if len(sys.argv) > 3 else "big_scale.csv"

    rows = []
    for size in range(1, 5):
        bt.logging.success(f"Running transfer lines with W = C = {size}")
        for machines in tqdm(range(STEP, MAX_MACHINES + 1, STEP), desc=f"W=C={size}"):
            row = run_row(TlConfig(machines, size, size, engine="dcs", timeout_s=600.0))
            rows.append(row)
            bt.logging.info(f"M={machines}: {row.verdict} in {row.wall_ms / 1000.0:.2f} s")
            if row.verdict != Verdict.CONTROLLER.value:
                break

    write_csv(rows, CSV)
    bt.logging.success(f"Wrote {len(rows)} rows to {CSV}")


if __name__ == "__main__":
    run()
