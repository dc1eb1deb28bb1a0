#!/usr/bin/env python3
"""
Checkpoint manager for resumable sweeps
Uses SQLite to record how far each sweep got, its failures and its totals
"""
import sqlite3
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional


class CheckpointManager:
    """Track sweep progress with SQLite"""

    def __init__(self, db_path: str):
        """
        Initialize checkpoint manager

        Args:
            db_path: Path to SQLite database file (":memory:" is not supported,
                every call opens its own connection)
        """
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self._init_db()

    def _init_db(self):
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("""
                CREATE TABLE IF NOT EXISTS checkpoints (
                    sweep TEXT PRIMARY KEY,
                    last_instance TEXT,
                    last_index INTEGER,
                    total_done INTEGER,
                    disagreements INTEGER,
                    last_updated TIMESTAMP,
                    status TEXT
                )
            """)

            conn.execute("""
                CREATE TABLE IF NOT EXISTS errors (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    sweep TEXT,
                    instance TEXT,
                    error_message TEXT,
                    timestamp TIMESTAMP
                )
            """)

            conn.execute("""
                CREATE TABLE IF NOT EXISTS statistics (
                    sweep TEXT PRIMARY KEY,
                    total_instances INTEGER,
                    disagreements INTEGER,
                    errors INTEGER,
                    start_time TIMESTAMP,
                    end_time TIMESTAMP,
                    duration_seconds REAL
                )
            """)
            conn.commit()

    def get_checkpoint(self, sweep: str) -> Optional[Dict]:
        """
        Get last checkpoint for a sweep

        Args:
            sweep: Sweep name (e.g., 'monomial')

        Returns:
            Dictionary with checkpoint data or None
        """
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            row = conn.execute("SELECT * FROM checkpoints WHERE sweep = ?", (sweep,)).fetchone()
            return dict(row) if row else None

    def save_checkpoint(self, sweep: str, last_instance: str, last_index: int, total_done: int,
                        disagreements: int = 0):
        """
        Save progress checkpoint

        Args:
            sweep: Sweep name
            last_instance: Key of the last finished instance
            last_index: Position of that instance in the sweep's deterministic order
            total_done: Instances finished so far
            disagreements: Instances whose check failed so far
        """
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("""
                INSERT OR REPLACE INTO checkpoints
                (sweep, last_instance, last_index, total_done, disagreements, last_updated, status)
                VALUES (?, ?, ?, ?, ?, ?, 'in_progress')
            """, (sweep, last_instance, last_index, total_done, disagreements, datetime.now()))
            conn.commit()

    def mark_complete(self, sweep: str):
        with sqlite3.connect(self.db_path) as conn:
            conn.execute(
                "UPDATE checkpoints SET status = 'completed', last_updated = ? WHERE sweep = ?",
                (datetime.now(), sweep)
            )
            conn.commit()

    def log_error(self, sweep: str, instance: str, error: str):
        """Log a failed instance for later review"""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("""
                INSERT INTO errors (sweep, instance, error_message, timestamp)
                VALUES (?, ?, ?, ?)
            """, (sweep, instance, error, datetime.now()))
            conn.commit()

    def get_errors(self, sweep: str) -> List[Dict]:
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            rows = conn.execute("SELECT * FROM errors WHERE sweep = ? ORDER BY id", (sweep,)).fetchall()
            return [dict(r) for r in rows]

    def save_statistics(self, sweep: str, total_instances: int, disagreements: int, errors: int,
                        start_time: datetime, end_time: datetime):
        """Totals of a run; errors counts instances that raised instead of giving a record"""
        duration = (end_time - start_time).total_seconds()

        with sqlite3.connect(self.db_path) as conn:
            conn.execute("""
                INSERT OR REPLACE INTO statistics
                (sweep, total_instances, disagreements, errors, start_time, end_time, duration_seconds)
                VALUES (?, ?, ?, ?, ?, ?, ?)
            """, (sweep, total_instances, disagreements, errors, start_time, end_time, duration))
            conn.commit()

    def get_statistics(self, sweep: str) -> Optional[Dict]:
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            row = conn.execute("SELECT * FROM statistics WHERE sweep = ?", (sweep,)).fetchone()
            return dict(row) if row else None

    def reset_sweep(self, sweep: str):
        """Forget everything about a sweep (start from scratch)"""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("DELETE FROM checkpoints WHERE sweep = ?", (sweep,))
            conn.execute("DELETE FROM errors WHERE sweep = ?", (sweep,))
            conn.execute("DELETE FROM statistics WHERE sweep = ?", (sweep,))
            conn.commit()
