"""Pydantic schemas for signatures, fixtures and reports"""
