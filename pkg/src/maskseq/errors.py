"""Exception types shared across the package."""


class MaskSeqError(Exception):
    """Base class for all maskseq errors."""


class DimensionMismatch(MaskSeqError):
    """Two grids that must share a shape do not."""


class InvalidDimensions(MaskSeqError):
    """A width/height pair is out of range."""


class ContainmentViolation(MaskSeqError):
    """A mask pair violates the expected subset relation."""


class EmptyRegion(MaskSeqError):
    """A region that must contain at least one pixel is empty."""


class NotALeaf(MaskSeqError):
    """Leaf-only tree operation applied to an internal node."""


class CannotRemoveRoot(MaskSeqError):
    """The root node cannot be removed."""


class UnknownNode(MaskSeqError):
    """Node id not present in the tree."""


class EmptyTree(MaskSeqError):
    """Tree has no non-root nodes to sample from."""


class InvalidPath(MaskSeqError):
    """Node ordering is not a linear extension of the tree."""


class PlacementFailed(MaskSeqError):
    """Region placement exhausted its retry budget."""


class NoValidSourceOffset(MaskSeqError):
    """No in-grid source location exists for a copy-move."""


class BudgetExceeded(MaskSeqError):
    """Brute-force enumeration would exceed its size budget."""


class EmptyPathSet(MaskSeqError):
    """Scoring requires at least one reference sequence."""


class ParseError(MaskSeqError):
    """Malformed file content (netpbm or manifest)."""


class MissingFile(MaskSeqError):
    """A file referenced by a manifest does not exist."""


class ValidationFailed(MaskSeqError):
    """Loaded data violates structural invariants."""


class UnknownMode(MaskSeqError):
    """Unrecognized perturbation mode."""
