"""Exact mean subtree order of trees: counting, families, search and
machine checks."""
from importlib import metadata

__version__ = metadata.version("subtree_order")
