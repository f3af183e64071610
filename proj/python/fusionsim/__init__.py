"""Graph-state fusion rules with a stabilizer-tableau oracle."""

from _fusionsim import *  # noqa: F401,F403
from _fusionsim import __doc__  # noqa: F401
