"""
Dioperad engine entry point.

Usage:
    python main.py koszul lie1bi --window 5
    python main.py --format structured mc-check data/examples/lie_coalgebra.tensors.yaml
"""

from src.cli import main

if __name__ == "__main__":
    main()
