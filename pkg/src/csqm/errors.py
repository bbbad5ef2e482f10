"""Exception taxonomy shared across the simulator.

Errors are typed so that protocol-level tests can distinguish an expected
rejection (bank abort, liveness cap) from a misuse of the machinery
(dimension mismatch, key discipline violation).
"""


class CsqmError(Exception):
    """Base class for all simulator errors."""


class DimensionError(CsqmError):
    """Vector/matrix lengths or qubit counts do not line up."""


class CapacityError(CsqmError):
    """Operation would exceed an enumeration or qubit-count guard."""


class RankError(CsqmError):
    """A full-rank matrix was required but not supplied (or not found)."""


class KeyAccessError(CsqmError):
    """Sealed ciphertext opened with the wrong key: a protocol-role violation."""


class IntegrityError(CsqmError):
    """Mismatched gadget material (ciphertext does not match the claw pair)."""


class LevelError(CsqmError):
    """Leveled-encryption budget exhausted."""


class UnsupportedGateError(CsqmError):
    """Gate outside the supported set for the requested evaluation."""


class BankAbort(CsqmError):
    """Typed minting rejection: the decrypted pad landed inside the secret
    subspace and the bank terminated the interaction.  Callers may re-run."""


class LivenessError(CsqmError):
    """Signing repair loop exceeded its retry cap."""


class OrderingError(CsqmError):
    """Envelope sequencing or framing violated on a session channel."""


class WireFormatError(CsqmError):
    """Malformed or unknown-version wire bytes."""


class SerialError(CsqmError):
    """Serial-number registry violation (duplicate issue or reuse)."""
