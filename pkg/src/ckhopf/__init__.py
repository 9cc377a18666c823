"""Cayley-Klein contractions of Lie, bialgebra and quantum (Hopf) algebras."""
