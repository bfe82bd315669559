"""Symbolic value types: indices, expressions, matrices, ansatz families"""
