"""
Winding and Chern numbers, edge spectra and the SSH reference chain.
"""
