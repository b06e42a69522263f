import sys

from vsq.cli import main

sys.exit(main())
