"""lunaprop: long-run cost model of lunar-derived vs Earth-launched propellant."""

__version__ = "0.1.0"
