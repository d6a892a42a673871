import hypothesis

hypothesis.settings.register_profile(
    "slowbox",
    deadline=None,
    max_examples=40,
    suppress_health_check=[hypothesis.HealthCheck.too_slow],
)
hypothesis.settings.load_profile("slowbox")
