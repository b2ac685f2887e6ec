"""
Discrete-time quantum walks in real and momentum space.
"""
