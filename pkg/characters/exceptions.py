from workbench.exceptions import WorkbenchError


class IncompleteTable(WorkbenchError):
    """Σ χ(1)² differs from |G|"""


class NotVirtual(WorkbenchError):
    """A class function has non-integral coordinates in the irreducible basis"""


class ClosedFormMismatch(WorkbenchError):
    pass
