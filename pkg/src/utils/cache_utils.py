from typing import Any, Callable, Optional, Tuple
from functools import wraps
import logging
import threading
from collections import OrderedDict

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

_MISSING = object()


class LRUCache:
    """Least Recently Used (LRU) cache for exact values.

    Values here are pure functions of their arguments, so entries never
    expire; they are only evicted when the cache is full.
    """

    def __init__(self, capacity: int = 4096):
        """
        Initialize LRU cache.

        Args:
            capacity: Maximum number of items to store
        """
        self.capacity = capacity
        self.cache: "OrderedDict[str, Any]" = OrderedDict()
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()

    def get(self, key: str, default: Any = _MISSING) -> Any:
        """Get item from cache, or `default` when absent."""
        with self._lock:
            if key not in self.cache:
                self.misses += 1
                return default
            # Move to end (most recently used)
            self.cache.move_to_end(key)
            self.hits += 1
            return self.cache[key]

    def put(self, key: str, value: Any):
        """
        Add item to cache.

        Args:
            key: Cache key
            value: Value to cache
        """
        with self._lock:
            if key in self.cache:
                self.cache.move_to_end(key)
            elif len(self.cache) >= self.capacity:
                # Remove least recently used item
                self.cache.popitem(last=False)
            self.cache[key] = value

    def resize(self, capacity: int):
        """Change the capacity, evicting the oldest entries if needed."""
        with self._lock:
            self.capacity = capacity
            while len(self.cache) > capacity:
                self.cache.popitem(last=False)

    def stats(self) -> Tuple[int, int, int]:
        """Return (size, hits, misses)."""
        return len(self.cache), self.hits, self.misses

    def clear(self):
        """Clear all items from cache."""
        with self._lock:
            self.cache.clear()
            self.hits = 0
            self.misses = 0


# Global cache instance
_global_cache = LRUCache()


def cached(namespace: Optional[str] = None):
    """
    Decorator memoizing a pure function of hashable, repr-stable arguments.

    Args:
        namespace: Optional key prefix; defaults to the function's qualified name
    """
    def decorator(func: Callable):
        prefix = namespace or func.__qualname__

        @wraps(func)
        def wrapper(*args, **kwargs):
            # Create cache key from function name and arguments
            key = f"{prefix}:{args!r}:{sorted(kwargs.items())!r}"

            result = _global_cache.get(key)
            if result is not _MISSING:
                logger.debug(f"Cache hit for {key}")
                return result

            result = func(*args, **kwargs)
            _global_cache.put(key, result)
            return result
        return wrapper
    return decorator


def configure_cache(capacity: int):
    """Resize the global cache."""
    _global_cache.resize(capacity)
    logger.debug(f"Global cache capacity set to {capacity}")


def cache_stats() -> Tuple[int, int, int]:
    """Return (size, hits, misses) of the global cache."""
    return _global_cache.stats()


def clear_cache():
    """Clear the global cache."""
    _global_cache.clear()
    logger.info("Global cache cleared")
