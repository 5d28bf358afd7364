"""Element table for the supported SMILES subset."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Element:
    symbol: str
    atomic_number: int
    atomic_weight: float
    default_valences: tuple
    organic_subset: bool
    aromatic_allowed: bool = False


ELEMENTS = {
    e.symbol: e
    for e in (
        Element("H", 1, 1.008, (1,), False),
        Element("B", 5, 10.81, (3,), True, True),
        Element("C", 6, 12.011, (4,), True, True),
        Element("N", 7, 14.007, (3, 5), True, True),
        Element("O", 8, 15.999, (2,), True, True),
        Element("F", 9, 18.998, (1,), True),
        Element("P", 15, 30.974, (3, 5), True, True),
        Element("S", 16, 32.06, (2, 4, 6), True, True),
        Element("Cl", 17, 35.45, (1,), True),
        Element("Br", 35, 79.904, (1,), True),
        Element("I", 53, 126.904, (1,), True),
    )
}

HYDROGEN_WEIGHT = ELEMENTS["H"].atomic_weight


def get_element(symbol):
    try:
        return ELEMENTS[symbol]
    except KeyError:
        raise KeyError(symbol) from None


def allowed_valences(element, charge=0):
    """Valences permitted for ``element`` carrying ``charge``.

    Carbon and boron lose a bonding slot per unit of charge of either sign
    (boron gains one when negative); the heteroatoms follow the isoelectronic
    shift, so N+ behaves like C and O- like F.
    """
    if charge == 0:
        return element.default_valences
    if element.symbol == "C":
        shifted = [v - abs(charge) for v in element.default_valences]
    elif element.symbol == "B":
        shifted = [v - charge for v in element.default_valences]
    else:
        shifted = [v + charge for v in element.default_valences]
    return tuple(v for v in shifted if v >= 0)
