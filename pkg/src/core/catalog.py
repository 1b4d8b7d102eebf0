from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Union

import pandas as pd
import requests

from . import config
from .graph import Graph, read_edge_list
from ..utils.errors import DatasetError, retry_on_error
from ..utils.logging_helpers import get_logger

logger = get_logger("catalog")

TABLE_FORMATS = ("parquet", "csv")


@dataclass
class CatalogConfig:
    data_dir: Path = field(default_factory=lambda: config.DATA_DIR)
    bundled_dir: Path = field(default_factory=lambda: config.BUNDLED_DIR)
    fmt: str = "parquet"  # parquet or csv
    timeout: float = 30.0

    def __post_init__(self):
        # Convert string paths to Path objects
        if isinstance(self.data_dir, str):
            self.data_dir = Path(self.data_dir)
        if isinstance(self.bundled_dir, str):
            self.bundled_dir = Path(self.bundled_dir)
        if self.fmt not in TABLE_FORMATS:
            raise DatasetError(f"unknown table format {self.fmt!r}; choose from {', '.join(TABLE_FORMATS)}")


def sha256_of(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


class InstanceCatalog:
    """Finds instance files (user data dir, then bundled), downloads on demand, memoizes graphs."""

    def __init__(self, cfg: Optional[CatalogConfig] = None, session: Optional[requests.Session] = None):
        self.config = cfg or CatalogConfig()
        self.session = session or requests.Session()
        self._graphs: Dict[Path, Graph] = {}
        self._lock = threading.Lock()

    def _check(self, path: Path, sha256: Optional[str]) -> Path:
        if sha256 is not None:
            actual = sha256_of(path)
            if actual.lower() != sha256.lower():
                raise DatasetError(f"checksum mismatch for {path}: expected {sha256}, got {actual}")
        return path

    @retry_on_error(max_retries=3, delay=1.0, backoff=2.0, exceptions=(requests.RequestException,))
    def _download(self, url: str) -> bytes:
        resp = self.session.get(url, timeout=self.config.timeout)
        resp.raise_for_status()
        return resp.content

    def resolve(
        self, name_or_path: Union[str, Path], url: Optional[str] = None, sha256: Optional[str] = None
    ) -> Path:
        """
        Locate an instance file.

        Order: the path as given, data_dir/name, bundled_dir/name, then a download from
        url into data_dir. A given sha256 is checked wherever the file came from.
        """
        given = Path(name_or_path)
        for candidate in (given, self.config.data_dir / given.name, self.config.bundled_dir / given.name):
            if candidate.is_file():
                return self._check(candidate, sha256)

        if url is None:
            raise DatasetError(
                f"instance {str(name_or_path)!r} not found in {self.config.data_dir} "
                f"or {self.config.bundled_dir}"
            )

        target = self.config.data_dir / given.name
        logger.info(f"Downloading {given.name} from {url}")
        try:
            content = self._download(url)
        except requests.RequestException as e:
            raise DatasetError(f"download of {given.name} failed: {e}") from e
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(content)
        try:
            return self._check(target, sha256)
        except DatasetError:
            target.unlink(missing_ok=True)
            raise

    def load_graph(
        self, name_or_path: Union[str, Path], url: Optional[str] = None, sha256: Optional[str] = None
    ) -> Graph:
        path = self.resolve(name_or_path, url=url, sha256=sha256).resolve()
        with self._lock:
            if path in self._graphs:
                return self._graphs[path]
        graph = read_edge_list(path)
        with self._lock:
            self._graphs[path] = graph
        return graph

    # -------------------------
    # Result tables
    # -------------------------
    def table_path(self, key: str) -> Path:
        return self.config.data_dir / "results" / f"{key}.{self.config.fmt}"

    def save_table(self, key: str, df: pd.DataFrame) -> Path:
        p = self.table_path(key)
        p.parent.mkdir(parents=True, exist_ok=True)
        if self.config.fmt == "parquet":
            df.to_parquet(p, index=False)
        else:
            df.to_csv(p, index=False)
        return p

    def load_table(self, key: str) -> Optional[pd.DataFrame]:
        p = self.table_path(key)
        if not p.exists():
            return None
        if self.config.fmt == "parquet":
            return pd.read_parquet(p)
        return pd.read_csv(p)

    def clear(self) -> None:
        with self._lock:
            self._graphs.clear()
