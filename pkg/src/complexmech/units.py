"""Physical constants shared by every model in the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Units:
    """Unit system; defaults put hbar = c = gravitational constant = 1.

    The imaginary-world light speed is never stored: it is defined as
    ``1j * c_re`` at every point of use.
    """

    hbar: float = 1.0
    c_re: float = 1.0
    grav: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "c_re", "grav"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    @property
    def c_im(self) -> complex:
        return 1j * self.c_re
