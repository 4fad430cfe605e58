from workbench.exceptions import WorkbenchError


class NoTruncation(WorkbenchError):
    """An l-power of the defect character never vanished within the bound"""
