"""Exception types shared across the package."""


class LayerGroupsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LayerGroupsError, ValueError):
    """An argument lies outside the domain of the operation (arity, label, layer)."""


class ParseError(LayerGroupsError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class InfiniteChain(LayerGroupsError):
    """Materialization was requested for a bunch with a nontrivial layer group."""


class SizeGuard(LayerGroupsError):
    """An exhaustive search was requested beyond the desk-scale limit."""


class NotResiduated(LayerGroupsError):
    """A finite table has no residuum for some pair."""


class InputContradiction(LayerGroupsError):
    """A finite chain produced a structure that cannot exist (e.g. a finite nontrivial o-group)."""


class NotAHom(LayerGroupsError):
    """A map between finite chains violates one of the homomorphism conditions."""


class NoClassJ(LayerGroupsError):
    """A cover-lemma check was requested on a bunch without class-J layers."""
