"""Regenerate the bundled synthetic questionnaire sheets.

The published case study does not include the raw expert scores, so these
sheets are random stand-ins that exercise ingestion, aggregation and entropy
weighting. They do not reproduce the published weights or metrics.
"""

from pathlib import Path

import numpy as np

AIRLINES = [
    "Qatar Airways", "Singapore Airlines", "Emirates", "ANA All Nippon Airways",
    "Qantas Airways", "Japan Airlines", "Turkish Airlines", "Air France",
    "Korean Air", "Swiss International Air Lines",
]
N_CRITERIA = 15
N_EXPERTS = 15
SEED = 20221017

DATA = Path(__file__).resolve().parents[1] / "src" / "mcdm_aism" / "data"


def main():
    rng = np.random.default_rng(SEED)
    quality = rng.uniform(3.0, 4.5, size=len(AIRLINES))
    header = "alternative," + ",".join(f"C{j}:benefit" for j in range(1, N_CRITERIA + 1))
    out = DATA / "questionnaires"
    out.mkdir(parents=True, exist_ok=True)
    sheets = []
    for e in range(1, N_EXPERTS + 1):
        noise = rng.normal(0.0, 0.8, size=(len(AIRLINES), N_CRITERIA))
        scores = np.clip(np.rint(quality[:, None] + noise), 1, 5).astype(int)
        sheets.append(scores)
        lines = ["# synthetic expert sheet, 1-5 scale", header]
        lines += [f"{a}," + ",".join(map(str, row)) for a, row in zip(AIRLINES, scores)]
        (out / f"expert_{e:02d}.csv").write_text("\n".join(lines) + "\n")
    mean = np.mean(sheets, axis=0)
    lines = ["# synthetic 10x15 score matrix: cell-wise mean of data/questionnaires/*.csv", header]
    lines += [f"{a}," + ",".join(f"{v:.6f}" for v in row) for a, row in zip(AIRLINES, mean)]
    (DATA / "airline_scores_synthetic.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
