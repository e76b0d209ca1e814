"""
Graphs, orthogonal complements and closed-set lattices.
"""
