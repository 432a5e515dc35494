import sys

from entanglement_persistence.cli.main import main

sys.exit(main())
