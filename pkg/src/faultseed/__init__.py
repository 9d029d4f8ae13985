"""Mutation-testing toolkit comparing syntactic and semantic similarity of seeded faults."""

__version__ = "0.1.0"
