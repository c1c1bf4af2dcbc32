class HessGKMError(Exception):
    pass


class UnsupportedType(HessGKMError, ValueError):
    pass


class InvalidRoot(HessGKMError, ValueError):
    pass


class TooLarge(HessGKMError):
    pass


class InvalidIdeal(HessGKMError, ValueError):
    pass


class NegativeBetti(HessGKMError, ArithmeticError):
    """A Betti number came out negative: solver bug or a non-GKM input."""


class ModeError(HessGKMError, ValueError):
    pass


class NotThetaIdeal(HessGKMError):
    pass


class NotAutomorphism(HessGKMError):
    pass


class InvalidSpec(HessGKMError, ValueError):
    pass
