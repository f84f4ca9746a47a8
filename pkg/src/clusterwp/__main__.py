import sys

from clusterwp.cli import main

if __name__ == "__main__":
    sys.exit(main())
