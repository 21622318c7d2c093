import sys

from fuzzyeoq.cli import main

sys.exit(main())
