from workbench.exceptions import WorkbenchError


class NotInIdeal(WorkbenchError):
    """An element required to lie in an ideal span does not"""


class UnknownSpan(WorkbenchError):
    pass
