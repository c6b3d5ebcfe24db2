import importlib.metadata

try:
    __version__ = importlib.metadata.version("dfsqc")
except importlib.metadata.PackageNotFoundError:
    __version__ = "0.1.0"
