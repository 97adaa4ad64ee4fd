"""Exception hierarchy.

Everything raised deliberately by the library derives from ``SemirecError``.
``InputError`` marks problems with user-supplied data (bad literals, bad
files, mismatched shapes); the CLI maps those to exit code 2.
"""


class SemirecError(Exception):
    pass


class InputError(SemirecError, ValueError):
    pass


class UnknownSemiringError(InputError):
    def __init__(self, name, valid):
        self.name = name
        self.valid = tuple(valid)
        super().__init__(
            f"unknown semiring {name!r}; valid names: {', '.join(self.valid)}"
        )


class MalformedLiteralError(InputError):
    def __init__(self, token, semiring_name):
        self.token = token
        super().__init__(f"malformed {semiring_name} literal: {token!r}")


class OutOfCarrierError(InputError):
    def __init__(self, token, semiring_name):
        self.token = token
        super().__init__(f"{token!r} is not an element of the {semiring_name} carrier")


class DimensionMismatchError(InputError):
    pass


class SemiringMismatchError(InputError):
    pass


class RangeError(InputError):
    pass


class SeqSpecError(InputError):
    pass


class InjectionError(InputError):
    """A sequence value could not be injected into the carrier."""

    def __init__(self, n, value, semiring_name):
        self.n = n
        self.value = value
        super().__init__(
            f"value {value} at n={n} does not belong to the {semiring_name} carrier"
        )


class NonzeroInitialError(InputError):
    def __init__(self, what="f(0)"):
        super().__init__(
            f"closed-form solution requires {what} = 0; "
            "use the iteration oracle (--method iterate) for nonzero initial conditions"
        )


class KindMismatchError(InputError):
    pass


class StructureError(InputError):
    """An automaton violates the structural rules for input states."""

    def __init__(self, state, reason):
        self.state = state
        super().__init__(f"state {state!r}: {reason}")


class BoundExceededError(InputError):
    pass
