"""Exception types shared across the package."""


class AssetError(RuntimeError):
    """A bundled asset file is missing or cannot be decoded."""


class TrainingDivergedError(RuntimeError):
    """Training produced a non-finite loss; carries step/branch diagnostics."""

    def __init__(self, message, *, step=None, t=None, r=None, branch=None):
        parts = [message]
        if step is not None:
            parts.append(f"step={step}")
        if t is not None:
            parts.append(f"t={t}")
        if r is not None:
            parts.append(f"r={r}")
        if branch is not None:
            parts.append(f"branch={branch}")
        super().__init__(" ".join(str(p) for p in parts))
        self.step = step
        self.t = t
        self.r = r
        self.branch = branch


class SchemaError(ValueError):
    """A CSV input is missing a required column."""


class EmptyInputError(ValueError):
    """A CSV input contains no data rows."""
