"""Author-topic modelling of author-attributed paper corpora."""

__version__ = "0.1.0"
