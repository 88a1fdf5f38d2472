"""Multiple-self normal-form games: build, solve, sequentialize."""

__version__ = "0.1.0"
