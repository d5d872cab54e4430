from drgfeas.cli import main
import sys

sys.exit(main())
