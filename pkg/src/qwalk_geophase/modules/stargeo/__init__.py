"""
Majorana stars, geodesics and null phase curves.
"""
