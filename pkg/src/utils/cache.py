"""Cache utility for derived algebraic objects"""
from typing import Any, Callable, Dict, Hashable, Optional


class Cache:
    """Simple in-memory cache, kept for the life of the process"""

    def __init__(self, enabled: bool = True):
        """Initialize cache

        Args:
            enabled (bool, optional): Whether caching is enabled. Defaults to True.
        """
        self.enabled = enabled
        self._cache: Dict[Hashable, Any] = {}

    def get(self, key: Hashable) -> Optional[Any]:
        """Get value from cache

        Args:
            key (Hashable): Cache key

        Returns:
            Optional[Any]: Cached value or None if not found
        """
        if not self.enabled:
            return None
        return self._cache.get(key)

    def set(self, key: Hashable, value: Any) -> None:
        if self.enabled:
            self._cache[key] = value

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Return the cached value for key, computing and storing it on a miss"""
        value = self.get(key)
        if value is None:
            value = compute()
            self.set(key, value)
        return value

    def clear(self) -> None:
        """Clear all cached values"""
        self._cache.clear()

    def __len__(self) -> int:
        return len(self._cache)
