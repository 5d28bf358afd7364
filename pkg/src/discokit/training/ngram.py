"""Character n-gram chemical language model with Laplace smoothing.

Strings are framed as ``^`` + SMILES + ``$``. An order-k model conditions on
the last k characters of the framed prefix; every shorter suffix down to the
empty context is also tabulated so unseen histories back off gracefully.
"""

import math
import random
from collections import Counter, defaultdict

from ..errors import EmptyValidationSet

BEGIN = "^"
END = "$"
PRECISION = 12
FORMAT_HEADER = "discokit-ngram 1"
MODEL_FILENAME = "model.ngram"


class NgramModel:
    def __init__(self, order, alpha, alphabet, table):
        self.order = order
        self.alpha = alpha
        self.alphabet = tuple(alphabet)
        self.table = {
            ctx: tuple(round(p, PRECISION) for p in row) for ctx, row in table.items()
        }
        self._index = {c: i for i, c in enumerate(self.alphabet)}

    def __eq__(self, other):
        return (
            isinstance(other, NgramModel)
            and self.order == other.order
            and self.alphabet == other.alphabet
            and self.table == other.table
        )

    def context_for(self, history):
        """Longest tabulated suffix of ``history`` (at most ``order`` chars)."""
        for length in range(min(self.order, len(history)), 0, -1):
            ctx = history[-length:]
            if ctx in self.table:
                return ctx
        return ""

    def distribution(self, history):
        return self.table[self.context_for(history)]

    def prob(self, history, char):
        row = self.distribution(history)
        i = self._index.get(char)
        # characters never seen in training get the row's smallest (pure pseudo-count) mass
        return row[i] if i is not None else min(row)

    def to_text(self):
        lines = [
            FORMAT_HEADER,
            f"order\t{self.order}",
            f"alpha\t{self.alpha:.{PRECISION}f}",
            "alphabet\t" + "".join(self.alphabet),
        ]
        for ctx in sorted(self.table):
            probs = " ".join(f"{p:.{PRECISION}f}" for p in self.table[ctx])
            lines.append(f"context\t{ctx}\t{probs}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = text.splitlines()
        if not lines or lines[0] != FORMAT_HEADER:
            raise ValueError("not a discokit n-gram model file")
        header = {}
        table = {}
        for line in lines[1:]:
            fields = line.split("\t")
            if fields[0] == "context":
                if len(fields) != 3:
                    raise ValueError(f"malformed context row: {line!r}")
                table[fields[1]] = tuple(float(x) for x in fields[2].split(" "))
            else:
                header[fields[0]] = fields[1] if len(fields) > 1 else ""
        alphabet = tuple(header["alphabet"])
        for ctx, row in table.items():
            if len(row) != len(alphabet):
                raise ValueError(f"row for context {ctx!r} has wrong width")
        return cls(int(header["order"]), float(header["alpha"]), alphabet, table)


def train_ngram(corpus, order, alpha=0.01):
    """Fit an order-``order`` model on SMILES strings."""
    if not 1 <= order <= 5:
        raise ValueError("order must lie in [1, 5]")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    corpus = list(corpus)
    chars = set()
    counts = defaultdict(Counter)
    for smiles in corpus:
        if BEGIN in smiles or END in smiles:
            raise ValueError(f"framing markers are not allowed inside training SMILES: {smiles!r}")
        chars.update(smiles)
        history = BEGIN
        for ch in smiles + END:
            for length in range(0, min(order, len(history)) + 1):
                counts[history[len(history) - length:] if length else ""][ch] += 1
            history += ch
    alphabet = tuple(sorted(chars)) + (END,)
    v = len(alphabet)
    table = {}
    for ctx, counter in counts.items():
        total = sum(counter.values())
        table[ctx] = tuple((counter.get(c, 0) + alpha) / (total + alpha * v) for c in alphabet)
    return NgramModel(order, alpha, alphabet, table)


def _as_rng(rng):
    return rng if isinstance(rng, random.Random) else random.Random(rng)


def ngram_sample(model, rng, max_length=120):
    """Draw one string character by character; not guaranteed to be valid SMILES.

    ``rng`` may be an integer seed or a ``random.Random`` whose state advances.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    rng = _as_rng(rng)
    out = []
    history = BEGIN
    while len(out) < max_length:
        row = model.distribution(history)
        u = rng.random() * sum(row)
        acc = 0.0
        choice = model.alphabet[-1]
        for ch, p in zip(model.alphabet, row):
            acc += p
            if u < acc:
                choice = ch
                break
        if choice == END:
            break
        out.append(choice)
        history += choice
    return "".join(out)


def validation_perplexity(model, held_out):
    """exp of the mean per-character negative log-probability, end marker included."""
    held_out = list(held_out)
    if not held_out:
        raise EmptyValidationSet("held-out set is empty")
    nll = 0.0
    events = 0
    for smiles in held_out:
        history = BEGIN
        for ch in smiles + END:
            nll -= math.log(model.prob(history, ch))
            events += 1
            history += ch
    return math.exp(nll / events)
