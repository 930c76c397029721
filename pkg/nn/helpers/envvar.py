import os


def getenv(key, default=0):
    """Environment variable ``key`` cast to the type of ``default``.

    Unset and empty variables give ``default``.
    """
    value = os.getenv(key)
    if value is None or value == "":
        return default
    return type(default)(value)
