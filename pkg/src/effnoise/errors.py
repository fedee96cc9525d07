class ResourceLimitError(Exception):
    """A requested computation exceeds a configured size cap."""
