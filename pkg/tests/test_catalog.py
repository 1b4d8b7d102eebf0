import hashlib
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import MagicMock, patch

import pandas as pd
import requests

from src.core.catalog import CatalogConfig, InstanceCatalog, sha256_of
from src.utils.errors import DatasetError
from src.utils.project_path import get_bundled_dir

EDGES = b"# tiny\na b\nb c\n"
URL = "https://example.org/instances/tiny.edges"


class TestInstanceCatalog(unittest.TestCase):
    def setUp(self):
        # Temporary user data directory; bundled instances stay in the package
        self.test_dir = tempfile.mkdtemp()
        self.data_dir = Path(self.test_dir) / "data"
        self.cfg = CatalogConfig(data_dir=self.data_dir, bundled_dir=get_bundled_dir(), fmt="csv")

        # Mock requests session
        self.mock_session = MagicMock()
        self.mock_session.get.return_value.content = EDGES
        self.catalog = InstanceCatalog(cfg=self.cfg, session=self.mock_session)

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def test_config_accepts_strings(self):
        cfg = CatalogConfig(data_dir=self.test_dir, bundled_dir=str(get_bundled_dir()))
        self.assertIsInstance(cfg.data_dir, Path)
        self.assertIsInstance(cfg.bundled_dir, Path)
        with self.assertRaises(DatasetError):
            CatalogConfig(fmt="xlsx")

    def test_resolve_bundled(self):
        path = self.catalog.resolve("ieee14.edges")
        self.assertEqual(path, get_bundled_dir() / "ieee14.edges")
        self.mock_session.get.assert_not_called()

    def test_data_dir_shadows_bundled(self):
        self.data_dir.mkdir(parents=True)
        (self.data_dir / "ieee14.edges").write_bytes(EDGES)
        g = self.catalog.load_graph("ieee14.edges")
        self.assertEqual(g.vertex_count, 3)

    def test_explicit_path(self):
        path = Path(self.test_dir) / "mine.edges"
        path.write_bytes(EDGES)
        self.assertEqual(self.catalog.resolve(path), path)

    def test_missing_without_url(self):
        with self.assertRaises(DatasetError):
            self.catalog.resolve("polish2383.edges")

    def test_download(self):
        g = self.catalog.load_graph("tiny.edges", url=URL)
        self.assertEqual(g.edge_count, 2)
        self.assertTrue((self.data_dir / "tiny.edges").is_file())
        self.mock_session.get.assert_called_once_with(URL, timeout=30.0)

        # Second lookup finds the downloaded copy
        self.catalog.resolve("tiny.edges", url=URL)
        self.assertEqual(self.mock_session.get.call_count, 1)

    def test_checksum(self):
        good = hashlib.sha256(EDGES).hexdigest()
        path = self.catalog.resolve("tiny.edges", url=URL, sha256=good.upper())
        self.assertEqual(sha256_of(path), good)

        with self.assertRaises(DatasetError):
            self.catalog.resolve("tiny.edges", sha256="0" * 64)

    def test_bad_download_is_removed(self):
        with self.assertRaises(DatasetError):
            self.catalog.resolve("tiny.edges", url=URL, sha256="0" * 64)
        self.assertFalse((self.data_dir / "tiny.edges").exists())

    @patch("src.utils.errors.time.sleep")
    def test_download_retries_then_fails(self, mock_sleep):
        self.mock_session.get.side_effect = requests.ConnectionError("unreachable")
        with self.assertRaises(DatasetError):
            self.catalog.resolve("tiny.edges", url=URL)
        self.assertEqual(self.mock_session.get.call_count, 3)
        self.assertEqual(mock_sleep.call_count, 2)

    @patch("src.utils.errors.time.sleep")
    def test_download_recovers(self, mock_sleep):
        ok = MagicMock(content=EDGES)
        self.mock_session.get.side_effect = [requests.Timeout("slow"), ok]
        g = self.catalog.load_graph("tiny.edges", url=URL)
        self.assertEqual(g.vertex_count, 3)
        mock_sleep.assert_called_once_with(1.0)

    def test_graphs_are_memoized(self):
        first = self.catalog.load_graph("ieee30.edges")
        self.assertIs(self.catalog.load_graph("ieee30.edges"), first)
        self.catalog.clear()
        self.assertIsNot(self.catalog.load_graph("ieee30.edges"), first)

    def test_tables(self):
        self.assertIsNone(self.catalog.load_table("bench"))
        df = pd.DataFrame({"case": ["ieee14"], "gamma_p": [2]})
        path = self.catalog.save_table("bench", df)
        self.assertEqual(path, self.data_dir / "results" / "bench.csv")
        loaded = self.catalog.load_table("bench")
        self.assertEqual(loaded.to_dict("records"), [{"case": "ieee14", "gamma_p": 2}])


if __name__ == "__main__":
    unittest.main()
