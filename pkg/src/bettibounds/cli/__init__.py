"""Command-line frontend: polynomial text, job files, reports."""
from .jobs import Job, JobError, load_job, parse_job
from .main import main, run_job
from .textpoly import PolynomialSyntaxError, parse_polynomial

__all__ = ["Job", "JobError", "load_job", "parse_job", "main", "run_job",
           "PolynomialSyntaxError", "parse_polynomial"]
