"""FocalFront - API Routes Package"""
