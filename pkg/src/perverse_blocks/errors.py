class PerverseBlocksError(ValueError):
    """Base class for every error raised by perverse_blocks."""


class DegreeParseError(PerverseBlocksError):
    def __init__(self, text: str, message: str, column: int | None = None) -> None:
        self.text = text
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"cannot parse {text!r}{where}: {message}")


class RootAtZetaError(PerverseBlocksError):
    """The product vanishes at the root of unity it is evaluated at."""


class HookError(PerverseBlocksError):
    """A hook or cohook move is not possible on the given beta-set or symbol."""


class FamilyError(PerverseBlocksError):
    """A label does not belong to the requested group family."""


class PerversityError(PerverseBlocksError):
    """A perversity function is not admissible for the requested construction."""


class HeckeError(PerverseBlocksError):
    """Specialized Hecke parameters violate a type or ambiance condition."""


class BlockFileError(PerverseBlocksError):
    def __init__(self, path: str, line: int | None, message: str) -> None:
        self.path = path
        self.line = line
        location = f"{path}:{line}" if line is not None else path
        super().__init__(f"{location}: {message}")
