import sys

from pmaxclass.cli import main

sys.exit(main())
