"""Exception hierarchy shared by all geodex modules."""


class GeodexError(Exception):
    pass


# graph core
class EndpointOutOfRange(GeodexError, ValueError):
    pass


class LoopEdge(GeodexError, ValueError):
    pass


class Disconnected(GeodexError):
    pass


class LevelOutOfRange(GeodexError, ValueError):
    pass


class EmptySet(GeodexError, ValueError):
    pass


class ParseError(GeodexError, ValueError):
    pass


# permutation groups
class DegreeMismatch(GeodexError, ValueError):
    pass


class SeedNotInUniverse(GeodexError, ValueError):
    pass


class NotTransitive(GeodexError):
    pass


class SetNotInvariant(GeodexError, ValueError):
    pass


class TupleBudgetExceeded(GeodexError):
    pass


# automorphism search
class BudgetExceeded(GeodexError):
    pass


# constructions
class ParameterOutOfRange(GeodexError, ValueError):
    pass


class InternalVerificationFailed(GeodexError):
    pass


class InvalidOrder(GeodexError, ValueError):
    pass


class DesignInvariantViolated(GeodexError, ValueError):
    pass


class CrossClassIntersectionNotConstant(DesignInvariantViolated):
    pass


# symmetry / quotients
class NotAutomorphisms(GeodexError, ValueError):
    pass


class HypothesisNotMet(GeodexError):
    pass


class InvalidPartition(GeodexError, ValueError):
    pass


# census
class UnknownName(GeodexError, KeyError):
    pass


class BadParameter(GeodexError, ValueError):
    pass
