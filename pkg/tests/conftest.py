from hypothesis import HealthCheck, settings

# Deterministic, CI-friendly property testing: no wall-clock deadlines and a
# fixed derivation so identical runs explore identical examples.
settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")
