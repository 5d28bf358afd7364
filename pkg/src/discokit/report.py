"""Case-study output: the delimited table and its scatter figure."""

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

CSV_HEADER = ("algorithm", "smiles", "tanimoto", "esol")
PANEL_TITLES = {
    "ngram_clm": "unconditional (n-gram CLM)",
    "seed_ga": "conditional (seed-constrained GA)",
}


@dataclass(frozen=True)
class CaseStudyRow:
    algorithm: str
    smiles: str
    tanimoto: float
    esol: float


def write_casestudy_csv(rows, path):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([r.algorithm, r.smiles, f"{r.tanimoto:.6f}", f"{r.esol:.6f}"])


def read_casestudy_csv(path):
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        return [
            CaseStudyRow(r["algorithm"], r["smiles"], float(r["tanimoto"]), float(r["esol"]))
            for r in reader
        ]


def plot_casestudy(rows, seed_esol, path, similarity_threshold=0.5):
    """Two scatter panels (Tanimoto to seed vs ESOL) with the seed guides."""
    algorithms = [a for a in PANEL_TITLES if any(r.algorithm == a for r in rows)]
    algorithms += sorted({r.algorithm for r in rows} - set(algorithms))
    esols = [r.esol for r in rows] + [seed_esol]
    pad = 0.5
    ylim = (min(esols) - pad, max(esols) + pad)

    with plt.rc_context({"svg.hashsalt": "discokit", "font.size": 9}):
        fig, axes = plt.subplots(1, max(len(algorithms), 1), figsize=(9, 3.8), sharey=True, squeeze=False)
        for ax, name in zip(axes[0], algorithms):
            pts = [r for r in rows if r.algorithm == name]
            ax.scatter([r.tanimoto for r in pts], [r.esol for r in pts], s=12, alpha=0.6,
                       edgecolors="none", color="tab:blue" if name == "ngram_clm" else "tab:orange")
            ax.axvline(similarity_threshold, color="0.3", linestyle="--", linewidth=0.8)
            ax.axhline(seed_esol, color="tab:red", linestyle=":", linewidth=0.9, label="seed ESOL")
            ax.set_xlim(0.0, 1.0)
            ax.set_ylim(*ylim)
            ax.set_title(PANEL_TITLES.get(name, name))
            ax.set_xlabel("Tanimoto similarity to seed")
        axes[0][0].set_ylabel("ESOL  [log10(mol/L)]")
        axes[0][0].legend(loc="lower right", frameon=False)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path
