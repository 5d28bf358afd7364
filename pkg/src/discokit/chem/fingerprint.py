"""Circular (Morgan-style) fingerprints and Tanimoto similarity."""

from dataclasses import dataclass
from functools import lru_cache

from ..errors import IncomparableFingerprints

DEFAULT_RADIUS = 2
DEFAULT_WIDTH = 2048

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


@lru_cache(maxsize=1 << 16)
def fnv1a_64(text):
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True)
class Fingerprint:
    bits: int
    width: int = DEFAULT_WIDTH
    radius: int = DEFAULT_RADIUS

    @classmethod
    def from_indices(cls, indices, width=DEFAULT_WIDTH, radius=DEFAULT_RADIUS):
        bits = 0
        for i in indices:
            if not 0 <= i < width:
                raise ValueError(f"bit {i} outside width {width}")
            bits |= 1 << i
        return cls(bits, width, radius)

    def on_bits(self):
        return [i for i in range(self.width) if self.bits >> i & 1]

    def count(self):
        return self.bits.bit_count()


def environment_strings(mol, radius=DEFAULT_RADIUS):
    """Yield the canonical environment string of every emitted (atom, r) pair.

    Level 0 encodes element, aromatic flag and charge. Level r encodes the
    atom's level r-1 code followed by its neighbours' level r-1 codes with
    bond symbols, sorted. An environment whose bond set did not grow since
    r-1 is skipped, so small molecules do not emit duplicate shells.
    """
    n = len(mol.atoms)
    codes = []
    out = []
    for atom in mol.atoms:
        env = f"{atom.symbol}|{int(atom.aromatic)}|{atom.formal_charge}"
        codes.append(fnv1a_64(env))
        out.append(env)
    cover = [frozenset() for _ in range(n)]
    for _ in range(radius):
        new_codes = []
        new_cover = []
        for i in range(n):
            parts = sorted(
                f"{mol.bonds[bi].order.value}{codes[j]:016x}" for j, bi in mol.adjacency[i]
            )
            env = f"{codes[i]:016x}[{','.join(parts)}]"
            bset = set(cover[i])
            for j, bi in mol.adjacency[i]:
                bset.add(bi)
                bset.update(cover[j])
            bset = frozenset(bset)
            if bset != cover[i]:
                out.append(env)
            new_codes.append(fnv1a_64(env))
            new_cover.append(bset)
        codes, cover = new_codes, new_cover
    return out


def morgan_fingerprint(mol, radius=DEFAULT_RADIUS, width=DEFAULT_WIDTH):
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if width <= 0 or width & (width - 1):
        raise ValueError("width must be a power of two")
    bits = 0
    for env in environment_strings(mol, radius):
        bits |= 1 << (fnv1a_64(env) & (width - 1))
    return Fingerprint(bits, width, radius)


def tanimoto(a, b):
    """|a & b| / |a | b|, with two empty fingerprints defined as identical."""
    if a.width != b.width or a.radius != b.radius:
        raise IncomparableFingerprints(
            f"width/radius mismatch: {a.width}/{a.radius} vs {b.width}/{b.radius}"
        )
    union = (a.bits | b.bits).bit_count()
    if union == 0:
        return 1.0
    return (a.bits & b.bits).bit_count() / union
