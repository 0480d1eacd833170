"""Exception hierarchy shared by the loaders, the resolver and the engine."""


class TextEllipsisError(Exception):
    pass


class KbError(TextEllipsisError, ValueError):
    pass


class KbSyntaxError(KbError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IsaCycleError(KbError):
    pass


class DanglingReferenceError(KbError):
    pass


class PartitionConflictError(KbError):
    pass


class UnknownNameError(KbError, KeyError):
    # KeyError.__str__ would repr() the message
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DiscourseError(TextEllipsisError, ValueError):
    """Malformed or inconsistent discourse annotation.

    ``utterance`` and ``phrase`` locate the offending annotation when known;
    ``line`` is the source line for parse errors.
    """

    def __init__(self, message, line=None, utterance=None, phrase=None):
        self.line = line
        self.utterance = utterance
        self.phrase = phrase
        where = []
        if line is not None:
            where.append(f"line {line}")
        if utterance is not None:
            where.append(f"utterance {utterance}")
        if phrase is not None:
            where.append(f"phrase {phrase}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class ResolutionError(TextEllipsisError):
    pass


class DuplicateAssertionError(ResolutionError):
    pass


class ProtocolError(TextEllipsisError):
    pass
