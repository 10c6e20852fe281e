"""Simulation lab for learning from and teaching humans whose interaction
strategy -- how they teach, and how they learn -- is unknown to the robot."""

__version__ = "0.1.0"
