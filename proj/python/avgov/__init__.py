from ._avgov import *  # noqa: F401,F403
from ._avgov import __doc__  # noqa: F401
