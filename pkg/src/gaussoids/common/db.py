#!/usr/bin/env python
# encoding: utf-8

import logging
import os
import sqlite3
import threading
import time
from typing import List, Optional, Tuple

from gaussoids.config import get_database_path


class ThreadSafeSQLite:
    """Eine Thread-sichere Wrapper-Klasse für SQLite."""

    def __init__(self, db_path: str):
        """
        Initialisiert den Thread-sicheren SQLite-Wrapper.

        Args:
            db_path: Pfad zur SQLite-Datenbank
        """
        self.db_path = db_path
        self.local = threading.local()
        self.lock = threading.RLock()

    def get_connection(self):
        """
        Gibt eine Thread-lokale Verbindung zurück.
        Jeder Thread erhält seine eigene Verbindung.

        Returns:
            Eine SQLite-Connection für den aktuellen Thread
        """
        if not hasattr(self.local, 'conn') or self.local.conn is None:
            self.local.conn = sqlite3.connect(self.db_path)
            self.local.conn.row_factory = sqlite3.Row
        return self.local.conn

    def execute(self, query: str, params: Tuple = ()):
        """
        Führt eine SQL-Abfrage thread-sicher aus.

        Args:
            query: SQL-Abfrage
            params: Parameter für die Abfrage

        Returns:
            Cursor-Objekt mit dem Ergebnis
        """
        with self.lock:
            conn = self.get_connection()
            cursor = conn.cursor()
            cursor.execute(query, params)
            return cursor

    def commit(self):
        """Commit der Transaktion im aktuellen Thread."""
        if hasattr(self.local, 'conn') and self.local.conn is not None:
            with self.lock:
                self.local.conn.commit()

    def close(self):
        """Schließt die Verbindung im aktuellen Thread."""
        if hasattr(self.local, 'conn') and self.local.conn is not None:
            with self.lock:
                self.local.conn.close()
                self.local.conn = None


class CountCache:
    """
    SQLite-Zwischenspeicher für exakte Klassenzählungen.

    Zählungen sind deterministisch, daher ist ein Eintrag pro (n, spec)
    dauerhaft gültig. Zahlen werden als Text gespeichert, weil sie 64 Bit
    überschreiten können.
    """

    def __init__(self, db_path: Optional[str] = None):
        self.db_path = db_path or get_database_path()
        directory = os.path.dirname(self.db_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self.db = ThreadSafeSQLite(self.db_path)
        self.create_tables()
        logging.debug("Zählcache initialisiert: %s", self.db_path)

    def create_tables(self):
        self.db.execute('''
            CREATE TABLE IF NOT EXISTS class_counts (
                n INTEGER NOT NULL,
                spec TEXT NOT NULL,
                count TEXT NOT NULL,
                nodes_explored INTEGER NOT NULL,
                wall_seconds REAL NOT NULL,
                computed_at INTEGER NOT NULL,
                PRIMARY KEY (n, spec)
            )
        ''')
        self.db.commit()

    def lookup(self, n: int, spec: str) -> Optional[Tuple[int, int, float]]:
        """
        Returns:
            (count, nodes_explored, wall_seconds) oder None
        """
        row = self.db.execute(
            'SELECT count, nodes_explored, wall_seconds FROM class_counts '
            'WHERE n = ? AND spec = ?', (n, spec)).fetchone()
        if row is None:
            return None
        logging.debug("Cache-Treffer für n=%d spec=%s", n, spec)
        return int(row['count']), int(row['nodes_explored']), float(row['wall_seconds'])

    def store(self, n: int, spec: str, count: int,
              nodes_explored: int, wall_seconds: float) -> None:
        self.db.execute(
            'INSERT OR REPLACE INTO class_counts '
            '(n, spec, count, nodes_explored, wall_seconds, computed_at) '
            'VALUES (?, ?, ?, ?, ?, ?)',
            (n, spec, str(count), nodes_explored, wall_seconds, int(time.time())))
        self.db.commit()

    def entries(self) -> List[Tuple[int, str, int]]:
        rows = self.db.execute(
            'SELECT n, spec, count FROM class_counts ORDER BY n, spec').fetchall()
        return [(int(r['n']), r['spec'], int(r['count'])) for r in rows]

    def close(self) -> None:
        self.db.close()


def get_count_cache(db_path: Optional[str] = None) -> Optional[CountCache]:
    """Öffnet den Zählcache; bei Fehlern wird ohne Cache weitergearbeitet."""
    try:
        return CountCache(db_path)
    except (OSError, sqlite3.Error) as e:
        logging.warning("Zählcache konnte nicht geöffnet werden: %s", e)
        return None
