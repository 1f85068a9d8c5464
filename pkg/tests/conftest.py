from hypothesis import HealthCheck, settings

# statistical helpers make some examples slow on loaded machines; the
# correctness of a property does not depend on wall time
settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")
