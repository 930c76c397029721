# Puts the repository root on sys.path so tests import ``nn`` and ``driving`` without installing.
