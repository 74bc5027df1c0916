from __future__ import annotations


class KomoriError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(KomoriError):
    """Input file or record violates its declared format."""


class DuplicateGloss(FormatError):
    def __init__(self, gloss: str, line_no: int | None = None):
        self.gloss = gloss
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"duplicate gloss {gloss!r}{where}")


class MalformedRow(FormatError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class UnknownLanguage(KomoriError, KeyError):
    def __init__(self, lang: str):
        self.lang = lang
        super().__init__(f"unknown language {lang!r}")

    def __str__(self) -> str:
        return self.args[0]


class BothEmpty(KomoriError, ValueError):
    def __init__(self):
        super().__init__("normalized distance is undefined for two empty words")


class NoComparablePairs(KomoriError):
    def __init__(self, lang_a: str, lang_b: str):
        self.pair = (lang_a, lang_b)
        super().__init__(f"no concept has forms in both {lang_a!r} and {lang_b!r}")


class EmptyLexicon(KomoriError, ValueError):
    def __init__(self):
        super().__init__("cannot index an empty lexicon")


class LengthMismatch(KomoriError, ValueError):
    def __init__(self, n_refs: int, n_hyps: int):
        self.n_refs = n_refs
        self.n_hyps = n_hyps
        super().__init__(f"{n_refs} references but {n_hyps} hypotheses")


class EmptyReference(KomoriError, ValueError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"reference {index} is empty after normalization")
