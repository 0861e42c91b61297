import sys

from inrecon.cli import main

sys.exit(main())
