import sys

from fockbench.cli import main

sys.exit(main())
