"""staticlab: curvature pipelines, static/CPE metrics and their identities."""

from ._staticlab import *  # noqa: F401,F403
from ._staticlab import __doc__  # noqa: F401
