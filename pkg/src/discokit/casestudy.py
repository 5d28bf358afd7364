"""Unconditional vs seed-conditioned generation around a hit compound.

An n-gram model trained on a corpus samples freely; the seed GA explores the
neighbourhood of the seed while pushing ESOL up. Both sample sets are scored
by Tanimoto similarity to the seed and by ESOL.
"""

import importlib.resources
import statistics
from dataclasses import dataclass
from pathlib import Path

from .algorithms import GaConfig, NgramSampler, SeedGaSampler
from .chem import canonical_smiles, morgan_fingerprint, parse_smiles, tanimoto
from .errors import InvalidSeed, SmilesError
from .properties import default_property_registry, esol
from .report import CaseStudyRow, plot_casestudy, write_casestudy_csv
from .training import NgramModel, TrainingTriplet, run_training
from .training.ngram import MODEL_FILENAME

# Stand-in hit compound (ponatinib, a DDR1-active kinase inhibitor).
DEFAULT_SEED = "Cc1ccc(C(=O)Nc2ccc(CN3CCN(C)CC3)c(C(F)(F)F)c2)cc1C#Cc1cnc2cccnn12"


def bundled_corpus(size=1000):
    """Path of a bundled training corpus (``size`` is 100 or 1000)."""
    return Path(str(importlib.resources.files("discokit.data") / f"corpus_{size}.smi"))


@dataclass
class CaseStudyResult:
    seed_smiles: str
    seed_esol: float
    rows: list
    ngram_dir: Path = None
    csv_path: Path = None
    svg_path: Path = None

    def of(self, algorithm):
        return [r for r in self.rows if r.algorithm == algorithm]

    def median_tanimoto(self, algorithm):
        return statistics.median(r.tanimoto for r in self.of(algorithm))

    def summary(self):
        out = {"seed_smiles": self.seed_smiles, "seed_esol": round(self.seed_esol, 6)}
        for name in ("ngram_clm", "seed_ga"):
            rows = self.of(name)
            out[name] = {
                "samples": len(rows),
                "median_tanimoto": round(statistics.median(r.tanimoto for r in rows), 6),
                "max_esol": round(max(r.esol for r in rows), 6),
            }
        return out


def _row(algorithm, smiles, seed_fp):
    mol = parse_smiles(smiles)
    return CaseStudyRow(algorithm, canonical_smiles(mol), tanimoto(seed_fp, morgan_fingerprint(mol)), esol(mol))


def run_casestudy(seed_smiles, output_dir, corpus=None, samples=200, rng_seed=42, order=3,
                  population_size=100, generations=30, similarity_threshold=0.5):
    """Train the n-gram model, draw both sample sets and write CSV and SVG."""
    try:
        seed = parse_smiles(seed_smiles)
    except SmilesError as exc:
        raise InvalidSeed(f"seed SMILES {seed_smiles!r}: {exc}") from None
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    seed_fp = morgan_fingerprint(seed)
    properties = default_property_registry()

    triplet = TrainingTriplet(
        {"order": order},
        {"rng_seed": rng_seed},
        {"corpus_path": str(corpus or bundled_corpus())},
    )
    report = run_training("ngram_clm", triplet, output_dir / "ngram_model")
    model = NgramModel.from_text((report.artifact_dir / MODEL_FILENAME).read_text("utf-8"))
    unconditional = NgramSampler(model, rng_seed).next_batch(samples)

    config = GaConfig(
        seed_smiles=seed_smiles,
        population_size=population_size,
        generations=generations,
        similarity_threshold=similarity_threshold,
        objective="esol",
        direction="maximize",
        rng_seed=rng_seed,
    )
    conditional = SeedGaSampler(config, properties).next_batch(samples)

    rows = [_row("ngram_clm", s, seed_fp) for s in unconditional]
    rows += [_row("seed_ga", s, seed_fp) for s in conditional]
    result = CaseStudyResult(canonical_smiles(seed), esol(seed), rows, report.artifact_dir)
    result.csv_path = output_dir / "casestudy.csv"
    result.svg_path = output_dir / "casestudy.svg"
    write_casestudy_csv(rows, result.csv_path)
    plot_casestudy(rows, result.seed_esol, result.svg_path, similarity_threshold)
    return result
