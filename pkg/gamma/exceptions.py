from workbench.exceptions import WorkbenchError


class NoConvergence(WorkbenchError):
    """No l-power of the element is ≡ 1 mod l within the configured bound"""


class OutOfModel(WorkbenchError):
    """The operation needs a denominator or root of unity the finite model does not carry"""
