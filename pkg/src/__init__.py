"""
Source package for the idma-power-game application.
"""
