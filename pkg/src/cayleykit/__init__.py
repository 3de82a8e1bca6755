"""cayleykit: Cayley position-faithful group representations.

Normal-form languages, generator multipliers on instrumented machine
models (synchronous transducers, position-faithful Turing machines, native
procedures), closure combinators, concrete groups, Cayley distance
functions, and independent oracles for cross-checking.
"""

__version__ = "0.1.0"
