# src/impulsive_fronts/__main__.py
"""Entry point for `python -m impulsive_fronts`; runs the CLI."""

from .cli import main


if __name__ == "__main__":
    raise SystemExit(main())
