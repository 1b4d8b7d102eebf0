"""
Reference oracles and instance generators.

Brute-force power domination and fort enumeration, graph generators, and the
3-CNF reduction used to build adversarial separation instances.
"""
