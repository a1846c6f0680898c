from collections.abc import Mapping

# Star positions and simple-module indices run over 1..e.
Index = int
EdgeId = str
VertexId = str

PiValues = tuple[int, ...]
EdgePi = Mapping[EdgeId, int]
EdgeSigns = Mapping[EdgeId, int]
Permutation = dict[Index, Index]
