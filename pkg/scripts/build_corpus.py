"""Regenerate the bundled 1000-molecule training corpus.

The corpus is the 100 reference molecules plus drug-like molecules assembled
from aryl cores, linkers and end groups. Output is deterministic.

    python scripts/build_corpus.py > src/discokit/data/corpus_1000.smi
"""

import random
import sys
from importlib import resources

from discokit.chem import canonical_smiles, parse_smiles, try_parse

SIZE = 1000

ARYLS = [
    "c1ccccc1", "c1ccc(F)cc1", "c1ccc(Cl)cc1", "c1ccc(Br)cc1", "c1ccc(OC)cc1",
    "c1ccc(C)cc1", "c1ccc(O)cc1", "c1ccc(N)cc1", "c1ccc(C(F)(F)F)cc1", "c1ccc(C#N)cc1",
    "c1cccc(Cl)c1", "c1ccc(F)c(F)c1", "c1ccncc1", "c1cccnc1", "c1ccccn1", "c1cnccn1",
    "c1ncccn1", "c1ccco1", "c1cccs1", "c1ccc2ccccc2c1", "c1ccc2[nH]ccc2c1",
    "c1ccc2ncccc2c1", "c1cn(C)cn1", "c1ccc2OCOc2c1", "c1ccc(S(N)(=O)=O)cc1",
    "c1ccc(C(=O)O)cc1", "c1cc(OC)c(OC)cc1", "c1nc2ccccc2s1", "c1nc2ccccc2o1", "c1cc(C)no1",
]
LINKERS = [
    "", "C", "CC", "CCC", "C(=O)N", "NC(=O)", "C(=O)NC", "CNC(=O)", "C(=O)O", "OC(=O)",
    "O", "OC", "CO", "OCC", "N", "NC", "CN", "S(=O)(=O)N", "NS(=O)(=O)", "C=C", "C(=O)",
    "CC(=O)N", "NC(=O)N", "C(O)C", "CCN", "S", "C#C",
]
ENDS = [
    "C", "CC", "C(C)C", "C(C)(C)C", "CCC", "CCCC", "C1CC1", "C1CCCC1", "C1CCCCC1",
    "C1CCNCC1", "N1CCOCC1", "N1CCN(C)CC1", "N1CCCC1", "N1CCCCC1", "C1CCOCC1", "CCO",
    "CCN(C)C", "CCCN(C)C", "C(F)(F)F", "CC(=O)O", "C(=O)N", "CO", "CCOC", "N(C)C",
    "CC#N", "C(N)=O", "CS(C)(=O)=O", "N1CCN(CC1)C(C)=O", "C1CCN(C)CC1", "OCCO",
]


def reference_corpus():
    text = resources.files("discokit.data").joinpath("corpus_100.smi").read_text("utf-8")
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def assemble(rng):
    aryl = rng.choice(ARYLS)
    shape = rng.random()
    if shape < 0.45:
        return rng.choice(ENDS) + rng.choice(LINKERS) + aryl
    if shape < 0.8:
        return aryl + rng.choice(LINKERS) + rng.choice(ENDS)
    return aryl + rng.choice(LINKERS) + rng.choice(ARYLS) + rng.choice(LINKERS) + rng.choice(ENDS)


def main():
    rng = random.Random(20221007)
    lines, seen = [], set()
    for smi in reference_corpus():
        seen.add(canonical_smiles(parse_smiles(smi)))
        lines.append(smi)
    while len(lines) < SIZE:
        smi = assemble(rng)
        mol = try_parse(smi)
        if mol is None:
            continue
        key = canonical_smiles(mol)
        if key in seen or mol.heavy_atom_count > 40:
            continue
        seen.add(key)
        lines.append(smi)
    out = sys.stdout
    out.write("# discokit training corpus: 100 reference molecules + 900 fragment-assembled\n")
    out.write("# drug-like molecules (scripts/build_corpus.py, seed 20221007)\n")
    for smi in lines:
        out.write(smi + "\n")


if __name__ == "__main__":
    main()
