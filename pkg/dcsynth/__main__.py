import sys

from dcsynth.cli import main

sys.exit(main())
