import sys

from komori.cli import main

sys.exit(main())
