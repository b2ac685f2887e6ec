"""
Geometric phase of a rotating two-level atom in an electromagnetic cavity.
"""
