"""Search, sieve and certify exponential Diophantine equations of the
shape (kU)^x + (kV)^y = (kW)^z built on Pythagorean triples, plus the
Terai and Eisenstein variants.
"""

__version__ = "0.1.0"
