import sys

from perverse_blocks.cli import main

sys.exit(main())
