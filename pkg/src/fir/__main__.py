import sys

from fir.cli import main

sys.exit(main())
