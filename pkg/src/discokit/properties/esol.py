"""Delaney ESOL: estimated aqueous solubility as log10(mol/L)."""

from dataclasses import dataclass

from ..chem.descriptors import (
    aromatic_proportion,
    count_rotatable_bonds,
    crippen_logp,
    molecular_weight,
)

INTERCEPT = 0.16
COEF_CLOGP = -0.63
COEF_MW = -0.0062
COEF_RB = 0.066
COEF_AP = -0.74


@dataclass(frozen=True)
class EsolDescriptors:
    clogp: float
    mw: float
    rb: int
    ap: float
    validate: bool = True

    def __post_init__(self):
        if not self.validate:
            return
        if self.mw <= 0:
            raise ValueError("mw must be positive")
        if not 0.0 <= self.ap <= 1.0:
            raise ValueError("ap must lie in [0, 1]")
        if self.rb < 0:
            raise ValueError("rb must be non-negative")

    @classmethod
    def unchecked(cls, clogp, mw, rb, ap):
        """Build without invariant checks, for exercising the raw formula."""
        return cls(clogp, mw, rb, ap, validate=False)

    def __add__(self, other):
        return EsolDescriptors.unchecked(
            self.clogp + other.clogp, self.mw + other.mw, self.rb + other.rb, self.ap + other.ap
        )


def esol_from_descriptors(d):
    return INTERCEPT + COEF_CLOGP * d.clogp + COEF_MW * d.mw + COEF_RB * d.rb + COEF_AP * d.ap


def esol_descriptors(mol):
    return EsolDescriptors(
        clogp=crippen_logp(mol),
        mw=molecular_weight(mol),
        rb=count_rotatable_bonds(mol),
        ap=aromatic_proportion(mol),
    )


def esol(mol):
    return esol_from_descriptors(esol_descriptors(mol))
