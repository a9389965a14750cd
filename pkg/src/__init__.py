"""
Symmetric bilinear multiplication algorithms over F_{q^n} from elliptic curves
"""
