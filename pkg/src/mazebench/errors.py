"""Exception types shared across modules."""


class CapacityError(Exception):
    """Distinct-config generation failed within the retry budget."""


class ConfigError(Exception):
    """Bad config file, split name, or scenario parameters."""


class CheckpointError(Exception):
    """Checkpoint missing, corrupt, or built for another architecture."""


class InternalConsistencyError(RuntimeError):
    """An engine/scenario contract was violated; indicates a bug."""
