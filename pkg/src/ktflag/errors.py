class KtflagError(Exception):
    pass


class RankMismatchError(KtflagError):
    pass


class InexactDivisionError(KtflagError):
    """
    Raised when a Laurent polynomial does not divide another one exactly.

    Attributes:
        dividend: the polynomial being divided
        divisor: the polynomial dividing it
    """

    def __init__(self, dividend, divisor, message: str = "inexact division"):
        self.dividend = dividend
        self.divisor = divisor
        super().__init__(f"{message}: ({dividend}) / ({divisor})")


class UnsupportedTypeError(KtflagError):
    pass


class NotMinimalCosetError(KtflagError):
    pass


class NotExtendableError(KtflagError):
    pass


class ParabolicUnsupportedError(KtflagError):
    pass


class SpaceMismatchError(KtflagError):
    pass


class IndexRangeError(KtflagError):
    pass


class SearchExhaustedError(KtflagError):
    """
    Raised when the certificate search hits its node cap before deciding.
    """

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search exhausted after {nodes} nodes")


class ConventionError(KtflagError):
    pass


class ConfigError(KtflagError):
    pass
