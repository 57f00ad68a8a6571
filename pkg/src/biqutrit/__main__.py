import sys

from biqutrit.cli import main

sys.exit(main())
