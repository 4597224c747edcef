import sys

from excmaps.cli import main

sys.exit(main())
