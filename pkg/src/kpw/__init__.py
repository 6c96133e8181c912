"""Exact computation in Kumjian-Pask algebras of finite k-graphs."""
