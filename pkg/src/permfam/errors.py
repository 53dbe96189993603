"""Exception types raised on malformed domain input."""


class PermfamError(ValueError):
    """Base class for every domain error raised by this package."""


class InvalidPermutation(PermfamError):
    pass


class InvalidFamily(PermfamError):
    pass


class InvalidRegistry(PermfamError):
    pass


class InvalidPairing(PermfamError):
    pass


class InvalidCode(PermfamError):
    pass
