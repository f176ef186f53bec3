"""Complex semisimple symmetric spaces as matrix models, with numerical checks
of the moment-map convexity theorem for H-orbits in G/K."""
