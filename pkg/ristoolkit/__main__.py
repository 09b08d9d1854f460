import sys

from ristoolkit.cli.main import main

sys.exit(main())
