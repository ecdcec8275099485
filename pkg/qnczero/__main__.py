import sys

from qnczero.cli import main

sys.exit(main())
