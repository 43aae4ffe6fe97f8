"""LVC - Lattice Voronoi Chromatic-number toolkit"""
