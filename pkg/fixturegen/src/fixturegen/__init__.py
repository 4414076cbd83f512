"""fixturegen: generate number-field fixtures for the brauerreg harness by
driving a bundled exact computer-algebra engine as a subprocess."""

__version__ = "0.1.0"
