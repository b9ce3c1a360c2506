from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version('hodgewalk')
except PackageNotFoundError:
    # package is not installed
    __version__ = 'unknown'
