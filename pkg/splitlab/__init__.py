"""
splitlab - Binary matroid splitting and forbidden-minor recognition
"""

__version__ = "0.1.0"
