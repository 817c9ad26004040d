class ValidationError(ValueError):
    """Input data or arguments violate a documented contract.

    The CLI maps this to exit code 1; genuine I/O failures (OSError) map
    to exit code 2.
    """
