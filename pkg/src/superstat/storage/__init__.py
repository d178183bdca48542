"""Storage for superstat artifacts."""

from .filesystem import FileSystemStorage

__all__ = ["FileSystemStorage"]
