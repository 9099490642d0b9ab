"""Non-orientable 4-genus of knots from Goeritz forms, lattice embeddings and band moves."""

__version__ = "0.1.0"
