"""
Konfigurationsmodul für gaussoids.

Dieses Modul stellt Funktionen und Klassen bereit, um Konfigurationseinstellungen
zu verwalten. Es lädt Einstellungen aus einer Konfigurationsdatei (falls vorhanden)
und stellt Standardwerte bereit.
"""

import copy
import json
import logging
import os
from typing import Any, Dict

# Standardpfad für die Konfigurationsdatei
CONFIG_DIR = os.path.join(os.path.expanduser("~"), ".config", "gaussoids")
CONFIG_FILE = os.getenv(
    "GAUSSOIDS_CONFIG", os.path.join(CONFIG_DIR, "config.json"))

# Standardwerte für Konfigurationseinstellungen
DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    # Allgemeine Einstellungen
    "general": {
        "debug_mode": False,              # Debug-Modus aktivieren?
        # Pfad zur Logdatei
        "log_file_path": os.path.join(os.path.expanduser('~'), "gaussoids.log"),
    },

    # Einstellungen der Suche (count / enumerate)
    "search": {
        "workers": 1,                     # Anzahl paralleler Prozesse
        "prefix_depth": 12,               # Aufteilungstiefe des Suchbaums
        "show_progress": False            # Fortschrittsbalken bei parallelem Zählen
    },

    # Ressourcengrenzen, --unsafe hebt sie auf
    "limits": {
        "max_search_n": 6,                # Größtes n für count/enumerate
        "max_fast_growing_n": 4,          # Größtes n für Klassen mit E, L und U
        "max_brute_force_n": 4,           # Größtes n für das Brute-Force-Orakel
        "max_brute_force_vertices": 1000000,
        "max_materialized_vertices": 5000,
        "max_bound_vertices": 250000,
        "max_enumerate_results": 100000,
        "max_input_n": 12                 # Größtes n in eingelesenen Dateien
    },

    # Zwischenspeicher für Zählergebnisse
    "cache": {
        "use_cache": True,
        "database_path": os.path.join(os.path.expanduser("~"), ".gaussoids", "counts.db")
    }
}


class Config:
    """
    Konfigurationsklasse für gaussoids.

    Diese Klasse lädt Konfigurationseinstellungen aus einer Datei und stellt
    Methoden bereit, um auf diese Einstellungen zuzugreifen und sie zu ändern.
    """

    def __init__(self, config_file: str = CONFIG_FILE) -> None:
        """
        Initialisiert eine neue Konfigurationsinstanz.

        Args:
            config_file: Pfad zur Konfigurationsdatei
        """
        self.config_file = config_file
        self.config = copy.deepcopy(DEFAULT_CONFIG)
        self.load_config()

    def load_config(self) -> None:
        """
        Lädt die Konfiguration aus der Konfigurationsdatei.

        Wenn die Datei nicht existiert, wird die Standardkonfiguration verwendet.
        """
        try:
            if os.path.exists(self.config_file):
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    user_config = json.load(f)

                # Benutzerwerte sektionsweise über die Standardwerte legen
                for section in user_config:
                    if section in self.config:
                        self.config[section].update(user_config[section])
                    else:
                        self.config[section] = user_config[section]

                logging.debug("Konfiguration aus %s geladen", self.config_file)
            else:
                logging.debug(
                    "Keine Konfigurationsdatei gefunden, verwende Standardwerte")
        except (OSError, ValueError) as e:
            logging.warning("Fehler beim Laden der Konfiguration: %s", e)
            # Verwende Standardwerte bei Fehler

    def save_config(self) -> None:
        """
        Speichert die aktuelle Konfiguration in der Konfigurationsdatei.
        """
        try:
            os.makedirs(os.path.dirname(self.config_file), exist_ok=True)

            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, indent=4, ensure_ascii=False)

            logging.debug("Konfiguration in %s gespeichert", self.config_file)
        except OSError as e:
            logging.warning("Fehler beim Speichern der Konfiguration: %s", e)

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """
        Gibt den Wert für einen Schlüssel in einer Sektion zurück.

        Args:
            section: Die Sektion der Konfiguration
            key: Der Schlüssel in der Sektion
            default: Der Standardwert, falls der Schlüssel nicht existiert

        Returns:
            Der Wert des Schlüssels oder der Standardwert
        """
        try:
            return self.config[section][key]
        except (KeyError, TypeError):
            return default

    def set(self, section: str, key: str, value: Any) -> None:
        """
        Setzt den Wert für einen Schlüssel in einer Sektion (nur im Speicher).

        Args:
            section: Die Sektion der Konfiguration
            key: Der Schlüssel in der Sektion
            value: Der zu setzende Wert
        """
        self.config.setdefault(section, {})[key] = value


# Globale Konfigurationsinstanz
config = Config()


def _env_flag(name: str) -> bool:
    return os.getenv(name, '').lower() in ('true', '1', 't', 'y', 'yes')


# Hilfsfunktionen, um leichter auf häufig verwendete
# Konfigurationseinstellungen zuzugreifen
def is_debug_mode() -> bool:
    """Prüft, ob der Debug-Modus aktiviert ist."""
    # Umgebungsvariable hat Vorrang vor Konfigurationsdatei
    return _env_flag('GAUSSOIDS_DEBUG') or bool(config.get("general", "debug_mode"))


def get_log_file_path() -> str:
    """Gibt den Pfad zur Logdatei zurück."""
    return config.get("general", "log_file_path")


def get_workers() -> int:
    """Gibt die Anzahl der Suchprozesse zurück."""
    env_workers = os.getenv('GAUSSOIDS_WORKERS')
    if env_workers and env_workers.isdigit():
        return max(1, int(env_workers))
    return max(1, int(config.get("search", "workers", 1)))


def get_prefix_depth() -> int:
    """Gibt die Tiefe zurück, in der der Suchbaum aufgeteilt wird."""
    return int(config.get("search", "prefix_depth", 12))


def show_progress() -> bool:
    return bool(config.get("search", "show_progress", False))


def get_limit(key: str) -> int:
    """Gibt eine Ressourcengrenze aus der Sektion ``limits`` zurück."""
    return int(config.get("limits", key, DEFAULT_CONFIG["limits"][key]))


def use_cache() -> bool:
    return bool(config.get("cache", "use_cache", True))


def get_database_path() -> str:
    """Gibt den Pfad zur SQLite-Datenbank der Zählergebnisse zurück."""
    return config.get("cache", "database_path")
