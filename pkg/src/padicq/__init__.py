"""padicq: finite rotation groups mod p, their representations, coupled
p-adic qubit bases, entanglement diagnostics and gate-set universality."""

__version__ = "0.1.0"
