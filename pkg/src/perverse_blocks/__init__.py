from perverse_blocks.blockfile import load_all, load_block
from perverse_blocks.cyclo import CycloProduct, Frac, RootAngle, pi
from perverse_blocks.errors import PerverseBlocksError
from perverse_blocks.unipotent import Block, GroupFamily, classical_block
from perverse_blocks.verify import VerifyReport, VerifySettings, run_suite

__version__ = "0.1.0"

__all__ = [
    "Block",
    "CycloProduct",
    "Frac",
    "GroupFamily",
    "PerverseBlocksError",
    "RootAngle",
    "VerifyReport",
    "VerifySettings",
    "classical_block",
    "load_all",
    "load_block",
    "pi",
    "run_suite",
]
