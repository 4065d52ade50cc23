import sys

from cmlnkit.cli.main import main

sys.exit(main())
