import sys

from repindex.cli import main

sys.exit(main())
