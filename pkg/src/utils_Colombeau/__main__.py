# Colombeau generalized functions utilities
# python -m utils_Colombeau

import sys

from utils_Colombeau.utils_CGF_cli import main

sys.exit(main())
