# Entry point for the kinematical deformation engine
# Usage: python main.py deform galilei poincare --observables --format json

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
