"""Batch processing of independent checks"""
