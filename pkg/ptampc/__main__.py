import sys

from ptampc.cli import main

sys.exit(main())
