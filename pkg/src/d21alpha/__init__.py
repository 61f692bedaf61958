"""Exact computer algebra for D(2,1;alpha), its Schrodinger and Fock models and the Segal-Bargmann transform."""
