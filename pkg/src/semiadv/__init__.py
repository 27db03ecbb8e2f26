"""Unique decoding of interleaved, folded and multiplicity Reed-Solomon codes under semi-adversarial errors."""
