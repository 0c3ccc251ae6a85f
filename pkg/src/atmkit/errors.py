"""Exception hierarchy shared by every stage of the pipeline."""


class AtmkitError(Exception):
    """Base class for all atmkit errors."""

    stage = "atmkit"


class CorpusError(AtmkitError, ValueError):
    stage = "corpus"


class PrepError(AtmkitError, ValueError):
    stage = "prep"


class EmptyVocabularyError(PrepError):
    pass


class HyperParamError(AtmkitError, ValueError):
    stage = "hyper"


class ModelFormatError(AtmkitError, ValueError):
    stage = "model"


class MismatchError(AtmkitError, ValueError):
    """Corpus and model were built against different vocabularies or authors."""

    stage = "model"


class EvalError(AtmkitError, ValueError):
    stage = "eval"


class SimilarityError(AtmkitError, ValueError):
    stage = "similarity"


class EmbedError(AtmkitError, ValueError):
    stage = "embed"
