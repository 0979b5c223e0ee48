import functools

from hypothesis import settings, HealthCheck

from qkm import catalog, engine

settings.register_profile("qkm", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qkm")


@functools.lru_cache(maxsize=None)
def entry(name):
    return catalog.get(name)


@functools.lru_cache(maxsize=None)
def table(name, N):
    """Shared built tables; callers must not mutate them."""
    return engine.build(entry(name).datum, N)
