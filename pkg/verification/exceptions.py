from workbench.exceptions import WorkbenchError


class ConfigError(WorkbenchError):
    """Suite configuration rejected before any check runs"""


class GroupTooLarge(WorkbenchError):
    pass
