import sys

from hypervc.cli import main

sys.exit(main())
