"""Acceptance criteria 1-11, each at its stated tolerance.

Every test records one ``criterion N: PASS|FAIL ...`` line; the lines are
echoed in the terminal summary by ``conftest.pytest_terminal_summary``.
"""

import itertools
import math
import os
import random
import shutil
import statistics
import subprocess
import sys
import time

import pytest
from hypothesis import given, settings

from discokit.algorithms import GaConfig, ga_run
from discokit.casestudy import DEFAULT_SEED, bundled_corpus, run_casestudy
from discokit.chem import Fingerprint, canonical_smiles, parse_smiles, tanimoto, write_smiles
from discokit.chem.descriptors import molecular_weight
from discokit.identifiers import ApplicationIdentifier
from discokit.properties import EsolDescriptors, default_property_registry, esol, esol_from_descriptors
from discokit.properties import metric_validity
from discokit.store import (
    MANIFEST_NAME,
    LocalDirRemote,
    MemoryRemote,
    ModelCache,
    ModelManifest,
    compute_sha256,
    ensure_version,
    save_version,
    upload_version,
)
from discokit.errors import RemoteFailure
from discokit.training import NgramModel, TrainingTriplet, ngram_sample, run_training, train_ngram

from .conftest import isomorphic, read_smi, shuffled
from .test_store import manifests

RESULTS = {}


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus100():
    return read_smi(bundled_corpus(100))


@pytest.fixture(scope="module")
def corpus1000():
    return read_smi(bundled_corpus(1000))


def test_criterion_01_round_trip(corpus100):
    t0 = time.perf_counter()
    pairs = []
    for s in corpus100:
        first = parse_smiles(s)
        pairs.append((first, parse_smiles(write_smiles(first))))
    elapsed = time.perf_counter() - t0
    ok_count = sum(isomorphic(a, b) for a, b in pairs)
    record(1, len(corpus100) == 100 and ok_count == 100 and elapsed < 1.0,
           f"round trip isomorphic {ok_count}/{len(corpus100)}, parse-write-parse {elapsed:.3f} s (< 1 s)")


def test_criterion_02_canonical_invariance(corpus100):
    rng = random.Random(2)
    violations, checked, exhaustive = 0, 0, 0
    for s in corpus100:
        m = parse_smiles(s)
        n = m.heavy_atom_count
        if n > 8:
            continue
        checked += 1
        expected = canonical_smiles(m)
        if n <= 6:
            exhaustive += 1
            orders = (list(p) for p in itertools.permutations(range(len(m.atoms))))
            variants = (m.renumbered(o) for o in orders)
        else:
            variants = (shuffled(m, rng) for _ in range(20))
        violations += sum(canonical_smiles(v) != expected for v in variants)
    record(2, checked > 0 and violations == 0,
           f"{checked} molecules with <= 8 heavy atoms ({exhaustive} exhaustive), {violations} violations")


def test_criterion_03_descriptor_oracles():
    methane = molecular_weight(parse_smiles("C"))
    ethanol = molecular_weight(parse_smiles("CCO"))
    intercept = esol_from_descriptors(EsolDescriptors.unchecked(0, 0, 0, 0))
    second = esol_from_descriptors(EsolDescriptors(1.0, 100.0, 0, 0.0))
    ok = (abs(methane - 16.043) <= 1e-3 and abs(ethanol - 46.069) <= 1e-3
          and intercept == 0.16 and abs(second + 1.09) <= 1e-9)
    record(3, ok, f"MW methane {methane:.4f}, ethanol {ethanol:.4f}; esol(0,0,0,0)={intercept!r}, "
                  f"esol(1,100,0,0)={second:.12f}")


def test_criterion_04_tanimoto_suite():
    f = Fingerprint.from_indices([1, 2, 3])
    fixed = (tanimoto(f, f) == 1.0 and tanimoto(f, Fingerprint.from_indices([4, 5])) == 0.0
             and tanimoto(f, Fingerprint.from_indices([2, 3, 4])) == 0.5)
    rng = random.Random(4)
    bad = 0
    pairs = 2000
    for _ in range(pairs):
        a = Fingerprint(rng.getrandbits(2048))
        b = Fingerprint(rng.getrandbits(2048) & rng.getrandbits(2048))
        t = tanimoto(a, b)
        bad += not (0.0 <= t <= 1.0 and t == tanimoto(b, a))
    record(4, fixed and bad == 0, f"fixed cases {'ok' if fixed else 'WRONG'}; {pairs} random pairs, {bad} violations")


@pytest.fixture(scope="module")
def ga_result():
    config = GaConfig(DEFAULT_SEED, population_size=100, generations=30, rng_seed=42)
    best = []

    def on_generation(gen, scored):
        best.append(scored.objective_value if scored.feasible else -math.inf)

    t0 = time.perf_counter()
    ranked = ga_run(config, default_property_registry(), on_generation=on_generation)
    return ranked, best, time.perf_counter() - t0


def test_criterion_05_case_study_directional(ga_result):
    ranked, _, elapsed = ga_result
    seed_esol = esol(parse_smiles(DEFAULT_SEED))
    top10 = ranked[:10]
    similar = sum(s.similarity_to_seed >= 0.5 for s in top10)
    feasible = [s.objective_value for s in ranked if s.feasible]
    best = max(feasible) if feasible else -math.inf
    ok = similar >= 5 and best >= seed_esol + 1.0 and elapsed < 120
    record(5, ok, f"top-10 with Tanimoto >= 0.5: {similar}; best feasible ESOL {best:.3f} vs seed "
                  f"{seed_esol:.3f} (+{best - seed_esol:.3f}, need +1.0); {elapsed:.1f} s")


def test_criterion_06_unconditional_contrast(tmp_path_factory):
    result = run_casestudy(DEFAULT_SEED, tmp_path_factory.mktemp("cs"), samples=200, rng_seed=42)
    uncond = result.median_tanimoto("ngram_clm")
    cond = result.median_tanimoto("seed_ga")
    n_u, n_c = len(result.of("ngram_clm")), len(result.of("seed_ga"))
    ok = n_u == n_c == 200 and uncond < cond and uncond < 0.3
    record(6, ok, f"median Tanimoto ngram_clm {uncond:.4f} (n={n_u}) vs seed_ga {cond:.4f} (n={n_c}); "
                  "need ngram < seed_ga and < 0.3")


def test_criterion_07_elitism(ga_result):
    _, best, _ = ga_result
    drops = sum(b < a for a, b in zip(best, best[1:]))
    record(7, len(best) == 30 and drops == 0,
           f"{len(best)} generations, best feasible ESOL {best[0]:.3f} -> {best[-1]:.3f}, {drops} decreases")


def test_criterion_08_store_round_trip(tmp_path):
    art = tmp_path / "art"
    (art / "nested").mkdir(parents=True)
    files = {"model.ngram": b"model bytes\n" * 50, "nested/meta.json": b'{"k": 1}'}
    for rel, data in files.items():
        (art / rel).write_bytes(data)
    ident = ApplicationIdentifier.parse("generation/ngram_clm/v1")
    cache = ModelCache(tmp_path / "cache")
    save_version(cache, ident, art)
    remote = LocalDirRemote(tmp_path / "hub")
    upload_version(cache, remote, ident)
    shutil.rmtree(cache.root)
    path = ensure_version(cache, remote, ident)
    identical = all((path / rel).read_bytes() == data for rel, data in files.items())
    verified = cache.verify(ident) is not None

    class Aborting(MemoryRemote):
        def get(self, key):
            if key.endswith("meta.json"):
                raise RemoteFailure("aborted mid-download")
            return super().get(key)

    crash_cache = ModelCache(tmp_path / "crash")
    aborting = Aborting()
    aborting.objects = {k: remote.get(k) for k in remote.list()}
    try:
        ensure_version(crash_cache, aborting, ident)
        aborted = False
    except RemoteFailure:
        aborted = True
    invisible = not crash_cache.version_dir(ident).exists() and not crash_cache.has_version(ident)
    retry = ensure_version(crash_cache, remote, ident)
    retry_ok = all((retry / rel).read_bytes() == data for rel, data in files.items())
    record(8, identical and verified and aborted and invisible and retry_ok,
           f"byte-identical after wipe {identical}, hashes verified {verified}; abort raised {aborted}, "
           f"no partial version {invisible}, retry ok {retry_ok}")


def test_criterion_09_cli_workflow(tmp_path):
    env = dict(os.environ, DISCO_CACHE_DIR=str(tmp_path / "cache"))
    env.pop("DISCO_REMOTE", None)
    cli = [sys.executable, "-m", "discokit.cli"]
    n = 10
    steps = [
        ["trainer", "--trainer", "ngram_clm", "--model", "order=3",
         "--data", f"corpus_path={bundled_corpus(1000)}", "--output-dir", str(tmp_path / "art")],
        ["saving", "--artifact", str(tmp_path / "art"), "--target", "generation/ngram_clm/v1"],
        ["upload", "--target", "generation/ngram_clm/v1", "--remote", str(tmp_path / "hub")],
        ["inference", "--algorithm", "generation/ngram_clm/v1", "--number-of-samples", str(n),
         "--params", "rng_seed=7", "--remote", str(tmp_path / "hub")],
    ]
    t0 = time.perf_counter()
    codes, out = [], ""
    for i, argv in enumerate(steps):
        if i == 3:
            shutil.rmtree(tmp_path / "cache")  # force a download from the hub
        proc = subprocess.run(cli + argv, env=env, capture_output=True, text=True, cwd=tmp_path)
        codes.append(proc.returncode)
        out = proc.stdout
    elapsed = time.perf_counter() - t0
    lines = out.splitlines()
    valid = sum(parse_smiles(s) is not None for s in lines) if all(c == 0 for c in codes) else 0
    record(9, codes == [0, 0, 0, 0] and len(lines) == n and valid == n and elapsed < 30,
           f"exit codes {codes}, {valid}/{n} valid SMILES from inference, {elapsed:.1f} s (< 30 s)")


def test_criterion_10_ngram(tmp_path, corpus1000):
    triplet = TrainingTriplet({"order": 3}, {"rng_seed": 0}, {"corpus_path": str(bundled_corpus(1000))})
    run_training("ngram_clm", triplet, tmp_path / "a")
    run_training("ngram_clm", triplet, tmp_path / "b")
    text_a = (tmp_path / "a" / "model.ngram").read_bytes()
    deterministic = text_a == (tmp_path / "b" / "model.ngram").read_bytes()
    model = NgramModel.from_text(text_a.decode())
    worst = max(abs(math.fsum(row) - 1.0) for row in model.table.values())

    def validity(order):
        m = train_ngram(corpus1000, order)
        rng = random.Random(7)
        return metric_validity([ngram_sample(m, rng) for _ in range(500)])

    v1, v3 = validity(1), validity(3)
    record(10, worst <= 1e-9 and deterministic and v3 > v1,
           f"{len(model.table)} contexts, max |row sum - 1| = {worst:.1e}; byte-deterministic {deterministic}; "
           f"validity order 3 {v3:.3f} > order 1 {v1:.3f}")


MANIFEST_CASES = []


@settings(max_examples=100, database=None)
@given(manifests)
def _manifest_identity(m):
    data = m.to_bytes()
    MANIFEST_CASES.append(ModelManifest.from_bytes(data).to_bytes() == data)


def test_criterion_11_manifest_canonical():
    MANIFEST_CASES.clear()
    _manifest_identity()
    empty = compute_sha256(b"")
    ok = (len(MANIFEST_CASES) >= 100 and all(MANIFEST_CASES)
          and empty == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855")
    record(11, ok, f"{sum(MANIFEST_CASES)}/{len(MANIFEST_CASES)} generated manifests byte-identical "
                   f"after round trip; sha256('') = {empty[:16]}...")
