import sys

from memsmatch.cli import main

if __name__ == "__main__":
    sys.exit(main())
