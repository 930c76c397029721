from .envvar import getenv
