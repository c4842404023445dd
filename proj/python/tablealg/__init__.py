"""Table algebras, association schemes and their wedge products."""

try:
    from tablealg._tablealg import *  # noqa: F401,F403
    from tablealg._tablealg import __doc__  # noqa: F401
except ImportError:  # running against a build tree
    from _tablealg import *  # noqa: F401,F403
    from _tablealg import __doc__  # noqa: F401
