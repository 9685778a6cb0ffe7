import sys

from flaghom.cli import main

sys.exit(main())
