"""File system storage for emitted artifacts."""

from __future__ import annotations

import logging
import os
import tempfile
from pathlib import Path

logger = logging.getLogger(__name__)


class FileSystemStorage:
    """Writes report and figure artifacts under a root directory."""

    def __init__(self, root: Path):
        """Initialize storage with root path."""
        self.root_path = Path(root)

    def path_for(self, name: str) -> Path:
        """Resolve an artifact name below the root, refusing to escape it."""
        path = (self.root_path / name).resolve()
        root = self.root_path.resolve()
        if root != path and root not in path.parents:
            raise ValueError(f"Artifact name escapes the storage root: {name}")
        return path

    def save_text(self, name: str, content: str) -> Path:
        """Save an artifact with atomic write and return its path."""
        path = self.path_for(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        self._atomic_write(path, content)
        logger.debug("Wrote %s (%d bytes)", path, len(content.encode("utf-8")))
        return path

    def _atomic_write(self, path: Path, content: str) -> None:
        """Write content to file atomically with '\\n' line endings."""
        temp_fd = None
        temp_path = None

        try:
            temp_fd, temp_path_str = tempfile.mkstemp(
                dir=path.parent, prefix=f"{path.name}.tmp.", suffix=".tmp"
            )
            temp_path = Path(temp_path_str)

            with os.fdopen(temp_fd, "w", encoding="utf-8", newline="") as f:
                f.write(content)
                f.flush()
                os.fsync(f.fileno())

            temp_fd = None

            temp_path.replace(path)

        finally:
            if temp_fd is not None:
                os.close(temp_fd)
            if temp_path and temp_path.exists():
                temp_path.unlink(missing_ok=True)
