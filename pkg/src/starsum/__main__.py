import sys

from starsum.cli import main

sys.exit(main())
