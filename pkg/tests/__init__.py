"""
Unit tests for the separability probability formulas
"""
