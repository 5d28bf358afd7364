"""Exception hierarchy.

Every domain error carries a machine-greppable ``code`` that the CLI prints
as ``E_<NAME>`` on stderr.
"""


class DiscoError(Exception):
    code = "E_DOMAIN"


# chem
class SmilesError(DiscoError):
    code = "E_PARSE"


class EmptyInput(SmilesError):
    def __init__(self):
        super().__init__("empty SMILES")


class SmilesSyntaxError(SmilesError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownElement(SmilesSyntaxError):
    def __init__(self, symbol, position):
        self.symbol = symbol
        super().__init__(f"unknown element {symbol!r}", position)


class UnclosedRing(SmilesError):
    def __init__(self, digit):
        self.digit = digit
        super().__init__(f"unclosed ring bond {digit}")


class UnbalancedParenthesis(SmilesSyntaxError):
    def __init__(self, position):
        super().__init__("unbalanced parenthesis", position)


class ValenceViolation(SmilesError):
    def __init__(self, atom_index, detail=""):
        self.atom_index = atom_index
        msg = f"valence violation on atom {atom_index}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class MultipleFragments(SmilesSyntaxError):
    def __init__(self, position=None):
        super().__init__("multi-fragment SMILES not supported", position)


class TooManyAtoms(SmilesError):
    def __init__(self, limit):
        super().__init__(f"molecule exceeds {limit} heavy atoms")


class InvalidSeed(SmilesError):
    code = "E_PARSE_SEED"


class UntypedAtom(DiscoError):
    code = "E_UNTYPED_ATOM"

    def __init__(self, atom_index, element):
        self.atom_index = atom_index
        super().__init__(f"no cLogP atom type matches atom {atom_index} ({element})")


class IncomparableFingerprints(DiscoError):
    code = "E_FINGERPRINT"


# properties
class DuplicateName(DiscoError):
    code = "E_DUPLICATE"


class UnknownProperty(DiscoError):
    code = "E_UNKNOWN_PROPERTY"


class EmptyBatch(DiscoError):
    code = "E_EMPTY_BATCH"


class NoValidSamples(DiscoError):
    code = "E_NO_VALID"


class EmptyTrainingSet(DiscoError):
    code = "E_EMPTY_TRAINING_SET"


# registry
class DuplicateIdentifier(DiscoError):
    code = "E_DUPLICATE"


class UnknownIdentifier(DiscoError):
    code = "E_UNKNOWN_ALGORITHM"


class ParameterValidation(DiscoError):
    code = "E_PARAM"

    def __init__(self, name, reason):
        self.name = name
        self.reason = reason
        super().__init__(f"parameter {name!r}: {reason}")


class GenerationStalled(DiscoError):
    code = "E_STALLED"


class MutationStalled(GenerationStalled):
    pass


# store
class ModelVersionNotFound(DiscoError):
    code = "E_MODEL_NOT_FOUND"


class HashMismatch(DiscoError):
    code = "E_HASH"


class VersionExists(DiscoError):
    code = "E_VERSION_EXISTS"


class EmptyArtifact(DiscoError):
    code = "E_EMPTY_ARTIFACT"


class NotInCache(DiscoError):
    code = "E_NOT_IN_CACHE"


class RemoteFailure(DiscoError):
    code = "E_REMOTE"


class IoFailure(DiscoError):
    code = "E_IO"


class ManifestError(DiscoError):
    code = "E_MANIFEST"


# training
class UnknownTrainer(DiscoError):
    code = "E_UNKNOWN_TRAINER"


class TripletValidation(DiscoError):
    code = "E_TRIPLET"

    def __init__(self, key, reason):
        self.key = key
        self.reason = reason
        super().__init__(f"{key}: {reason}")


class EmptyCorpus(DiscoError):
    code = "E_EMPTY_CORPUS"


class EmptyValidationSet(DiscoError):
    code = "E_EMPTY_VALIDATION"
