"""
Base error for the workbench.
Each app declares its own errors in exceptions.py and derives from this one,
so the suite runner can tell mathematical failures apart from bugs.
"""


class WorkbenchError(Exception):
    """Base class for every error raised by workbench services"""

    def __init__(self, message='', **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def as_dict(self):
        return {
            'error': type(self).__name__,
            'message': self.message,
            **{key: str(value) for key, value in self.context.items()},
        }
