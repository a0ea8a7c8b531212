"""Runs (maximal repetitions) enumeration with exact exponent sums.

Core pieces: immutable words and morphisms, a near-linear run
enumerator with a brute-force oracle, exact rational run statistics,
the handle construction with its property checks, and morphism-driven
word families. The ``runexp`` command line fronts all of it.
"""

from .families import FamilySpec, builtin_family, generate_member, load_family, run_rich_word
from .handles import HandleReport, HandleSet, handles_of_run, verify_handle_properties
from .periods import RotationExtremes, border_table, rotation_extremes, shortest_period
from .runs import (
    Run,
    RunSet,
    RunStats,
    find_runs,
    find_runs_bruteforce,
    fraction_to_decimal,
    run_stats,
    sigma_as_decimal,
    validate_run,
)
from .words import (
    Morphism,
    Word,
    apply_morphism,
    iterate_morphism,
    load_morphism_file,
    power,
    read_word_file,
    word_from_text,
    write_word_file,
)

__version__ = "0.1.0"

__all__ = [
    "FamilySpec",
    "HandleReport",
    "HandleSet",
    "Morphism",
    "RotationExtremes",
    "Run",
    "RunSet",
    "RunStats",
    "Word",
    "apply_morphism",
    "border_table",
    "builtin_family",
    "find_runs",
    "find_runs_bruteforce",
    "fraction_to_decimal",
    "generate_member",
    "handles_of_run",
    "iterate_morphism",
    "load_family",
    "load_morphism_file",
    "power",
    "read_word_file",
    "rotation_extremes",
    "run_rich_word",
    "run_stats",
    "shortest_period",
    "sigma_as_decimal",
    "validate_run",
    "verify_handle_properties",
    "word_from_text",
    "write_word_file",
    "__version__",
]
