from cplab.api import CatalanPairLab


__all__ = ["CatalanPairLab"]
