"""Small coweights, Reeder pieces and the combinatorics around them.

Modules:

- ``rootsystem``: root data, coweight bases, dominance, Weyl group actions
- ``multiplicity``: Freudenthal multiplicities and zero weight spaces
- ``orbits``: nilpotent orbit labels, dimensions and closure order
- ``paperdata``: embedded reference tables with load-time self-checks
- ``reeder``: small coweights, Reeder pieces and the stalk identity
- ``matrixmodel``: exact Laurent-matrix models for classical groups
- ``cli``: the ``reederkit`` command
"""

from .rootsystem import Coweight, LieType, build_root_system, parse_coweight

__version__ = "0.1.0"

__all__ = ["Coweight", "LieType", "build_root_system", "parse_coweight", "__version__"]
