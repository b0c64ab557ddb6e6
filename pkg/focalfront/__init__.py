"""
FocalFront - Wave fronts, their singularities and focal surfaces.
"""

__version__ = "0.1.0"
