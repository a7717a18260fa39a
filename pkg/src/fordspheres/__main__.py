import sys

from fordspheres.cli import main

sys.exit(main())
