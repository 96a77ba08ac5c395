"""Exception hierarchy shared by every module."""


class NcgError(Exception):
    """Base class for workbench errors."""


class UsageError(NcgError):
    pass


class ParameterNotRepresentable(NcgError):
    pass


class UnknownModel(NcgError):
    pass


class UnknownCheck(NcgError):
    pass
