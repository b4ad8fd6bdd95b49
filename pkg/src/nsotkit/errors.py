"""Exception hierarchy.

Three failure kinds map onto CLI exit codes: structural/validation
problems (malformed inputs, axis mismatches) exit 2, domain errors
(mathematically undefined requests) exit 3, resource limits exit 4.
"""


class ToolkitError(Exception):
    """Base class for all nsotkit errors."""


class StructureError(ToolkitError, ValueError):
    """Inputs are structurally invalid: unknown axes, shape or label mismatch."""


class ValidationError(ToolkitError, ValueError):
    """A file, option, or declared policy failed validation."""


class DomainError(ToolkitError, ValueError):
    """The requested value is undefined for these inputs (e.g. conditioning
    on a zero-probability event, classifying a signaling box)."""


class ResourceLimitError(ToolkitError, RuntimeError):
    """Exact enumeration would exceed the configured size limits."""
