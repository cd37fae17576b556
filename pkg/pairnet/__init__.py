"""pairnet: optimal ate pairings by elliptic nets."""

__version__ = "0.1.0"
