from workbench.exceptions import WorkbenchError


class InconsistentPresentation(WorkbenchError):
    """Relations do not define an l-group with the declared generator orders"""


class SizeCap(WorkbenchError):
    """Group order above the configured cap"""


class UnknownName(WorkbenchError):
    pass


class NotInSubgroup(WorkbenchError):
    pass
