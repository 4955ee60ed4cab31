"""Proof systems, the proof-script checker and the bundled derivation corpus."""

from .checker import CheckReport, Checker, MalformedScript, ProofError, ProofScript, check_proof, load_script
from .corpus import CorpusError, check_corpus, lemma_table, load_corpus, matches_schema
from .mutation import Mutation, mutation_suite, mutations
from .soundness import SoundnessReport, soundness_fuzz, strict_lax_witness
from .systems import DERIVED, SYSTEMS, ProofSystem, system

__all__ = [
    "CheckReport",
    "Checker",
    "CorpusError",
    "DERIVED",
    "MalformedScript",
    "Mutation",
    "ProofError",
    "ProofScript",
    "ProofSystem",
    "SYSTEMS",
    "SoundnessReport",
    "check_corpus",
    "check_proof",
    "lemma_table",
    "load_corpus",
    "load_script",
    "matches_schema",
    "mutation_suite",
    "mutations",
    "soundness_fuzz",
    "strict_lax_witness",
    "system",
]
