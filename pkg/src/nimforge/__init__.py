"""NIM-reps of Jordan–Larson and GLM fusion rings."""

__version__ = "0.1.0"
