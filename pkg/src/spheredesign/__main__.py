import sys

from spheredesign.cli import main

sys.exit(main())
