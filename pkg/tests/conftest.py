from hypothesis import HealthCheck, settings

# exact arithmetic on large integers is slow but deterministic; no deadlines
settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")
