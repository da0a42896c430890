"""Heat-kernel function families: Psi/Phi series, Hankel transforms, Green expansions."""
