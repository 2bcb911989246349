"""Exception hierarchy shared by all toolkit modules.

I/O failures are reported with the builtin OSError family; everything
the toolkit itself detects derives from JfssError.
"""


class JfssError(Exception):
    """Base class for all toolkit errors."""


# -- cryptographic primitives -------------------------------------------------

class RandomnessUnavailable(JfssError):
    """The operating system entropy source failed."""


class IntegrityError(JfssError):
    """Authentication tag mismatch: tampered data or wrong key."""


class MalformedInput(JfssError):
    """Sealed input is too short to contain an authentication tag."""


class EmptyPassword(JfssError):
    """Password hashing requires a non-empty password."""


# -- container / key file formats ---------------------------------------------

class InvalidHeader(JfssError):
    """Container header fields violate the format invariants."""


class InvalidRecord(JfssError):
    """Key file record fields violate the format invariants."""


class FormatError(JfssError):
    """Encoded bytes do not parse as the expected on-disk format."""


class BadMagic(FormatError):
    """Leading magic bytes identify a different (or no) format."""


class BadVersion(FormatError):
    """Unsupported format version."""


class BadCipher(FormatError):
    """Unknown cipher suite identifier."""


class Truncated(FormatError):
    """Input ends before the format says it should."""


class BadName(FormatError):
    """Stored file name is not valid UTF-8 or contains forbidden characters."""


class BadLength(FormatError):
    """Fixed-size structure has the wrong total length."""


# -- keystore -----------------------------------------------------------------

class NoDestination(JfssError):
    """No usable location to store a key file (card absent, no fallback)."""


class KeyNotFound(JfssError):
    """No key file found for the requested file id."""


class KeyMismatch(JfssError):
    """Key file is bound to a different file id than requested."""


# -- credential store / authentication ----------------------------------------

class AlreadyInitialized(JfssError):
    """A credential store already exists at the target path."""


class WeakPassword(JfssError):
    """Password shorter than the minimum length."""


class InvalidUsername(JfssError):
    """Username is empty, too long, or contains control characters."""


class NotAdmin(JfssError):
    """Operation requires an admin session."""


class DuplicateUser(JfssError):
    """Username already registered."""


class AuthFailure(JfssError):
    """Unknown user or wrong password (deliberately indistinguishable)."""


class StoreCorrupt(JfssError):
    """Credential store is missing or does not parse."""


# -- vault operations ----------------------------------------------------------

class NotAuthenticated(JfssError):
    """Vault operation invoked without a login session."""


class SourceMissing(JfssError):
    """Encryption source is not a readable regular file."""


class AlreadyEncrypted(JfssError):
    """Refusing to encrypt a file that is already a container."""


class NameCollision(JfssError):
    """Output path already exists; the toolkit never overwrites."""


# -- benchmark -----------------------------------------------------------------

class InvalidSelection(JfssError):
    """Benchmark arguments out of range (selection size, repeats)."""
