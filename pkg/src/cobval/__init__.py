"""Validation of COBOL-to-target translations by symbolic test generation.

The pipeline parses a COBOL paragraph, lowers it to an explicit control-flow
IR, generates one test per feasible bounded path with a built-in constraint
solver, runs the COBOL oracle with mocked resources, aligns resource calls to
the translated program's call sequences, and validates the translation
through a language-neutral adapter protocol.
"""

__version__ = "0.1.0"
