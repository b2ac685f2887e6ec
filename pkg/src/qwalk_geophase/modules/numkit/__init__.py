"""Shared numerical substrate: eigenproblems, polynomial roots, quadrature."""
