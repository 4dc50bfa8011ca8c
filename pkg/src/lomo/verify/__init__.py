"""Verification harness: corpus, checks, suites and reports."""
from .corpus import Corpus, CorpusMember
from .report import VerificationReport, bundle, dumps, to_csv
from .suites import SUITES, run_suites

__all__ = ["Corpus", "CorpusMember", "SUITES", "VerificationReport", "bundle", "dumps",
           "run_suites", "to_csv"]
