"""Shared worked-example data."""

from srrlab.codes import LinearCode, from_generator
from srrlab.gf2 import BinaryMatrix

# Rows of the printed 11 x 15 parity-check matrix that accompanies the
# printed [15, 4] Simplex generator.
CHECK_ROWS = [
    "100000000001100",
    "110000000000110",
    "111000000000000",
    "100100000000010",
    "100010000000101",
    "100001000001001",
    "100000100000001",
    "100000010001111",
    "100100101000100",
    "100000000100111",
    "100000000010011",
]

# Checks 1, 3, 4, 7 of that matrix: orthogonal on coordinate 1.
VOTE_CHECKS = [(1, 12, 13), (1, 2, 3), (1, 4, 14), (1, 7, 15)]

# Nearest family that is valid for the printed generator: {4,14} -> {4,5}
# and {7,15} -> {6,7}.
VALID_VOTE_CHECKS = [(1, 12, 13), (1, 2, 3), (1, 4, 5), (1, 6, 7)]


def printed_checks_code() -> LinearCode:
    """The [15, 4] code whose dual is spanned by ``CHECK_ROWS``.

    The basis is arranged so that column 1 is ``e_4``, matching the role of
    coordinate 1 in the vote example.
    """
    h = from_generator(BinaryMatrix.from_strings(CHECK_ROWS))
    basis = [v.bits for v in h.dual_basis]
    lead = next(b for b in basis if b & 1)
    rest = [b ^ lead if b & 1 else b for b in basis if b != lead]
    return LinearCode(BinaryMatrix(15, tuple(rest + [lead])), "printed-checks")
