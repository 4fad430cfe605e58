from workbench.exceptions import WorkbenchError


class NotAUnit(WorkbenchError):
    """Group-ring element with augmentation divisible by l"""


class NotInImage(WorkbenchError):
    """A Hom* element that is not the trace of an integral trace element"""


class FrobeniusMismatch(WorkbenchError):
    pass
