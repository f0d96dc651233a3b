from ._qcalc import *  # noqa: F401,F403
from ._qcalc import __doc__  # noqa: F401
