"""Fractional reaction-diffusion and telegraph equations via Mittag-Leffler functions."""
