class TorkhError(Exception):
    """Error carrying a machine readable code.

    The CLI maps these onto exit codes, so the code strings are part of the
    public interface.
    """

    def __init__(self, code, detail=""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code
        self.detail = detail


# codes that mean the input was read fine but failed a consistency check
VALIDATION_CODES = frozenset({
    "EULER_MISMATCH", "SELF_INTERSECTION", "DANGLING_PORT", "WINDING_MISMATCH",
    "LENGTH_MISMATCH", "NOT_CONTRACTIBLE", "NONCONTRACTIBLE_ANCHOR",
    "NOT_ADJACENT", "NOT_A_COMPLEX", "DISCONNECTED", "EMPTY_CONFIGURATION",
    "AMBIGUOUS_LABEL", "WRONG_INDEX", "MISSING_GEOMETRY", "NOT_QUASI_LADYBUG",
    "MALFORMED",
})
