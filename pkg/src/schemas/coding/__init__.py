"""Coding schemas."""
from src.schemas.coding.code import CodeConfig

__all__ = ["CodeConfig"]
