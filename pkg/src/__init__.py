"""
Kempe Reconfiguration Toolkit
Kempe classes of k-colorings of almost-bipartite graphs: exact counting,
certified constructions and desk-scale verification
"""

__version__ = "0.2.0"
