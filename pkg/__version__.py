"""Version information for the Positive Commutator Toolkit."""

__version__ = "0.1.0"
__license__ = "MIT"
