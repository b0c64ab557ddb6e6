"""FocalFront - API Package"""
