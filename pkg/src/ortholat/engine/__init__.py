"""
Analyses built on closed-set lattices, and the check runner.
"""
