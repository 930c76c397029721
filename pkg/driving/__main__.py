import sys

from driving.harness.cli import main

sys.exit(main())
