from .base import BaseCheck
from .registry import REGISTRY, REGISTRY_VERSION, get_check, native_mode, run_check

__all__ = ['BaseCheck', 'REGISTRY', 'REGISTRY_VERSION', 'get_check', 'native_mode', 'run_check']
