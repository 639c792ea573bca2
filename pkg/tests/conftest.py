import hypothesis

hypothesis.settings.register_profile(
    "cdtube",
    max_examples=120,
    deadline=None,
    derandomize=True,
)
hypothesis.settings.load_profile("cdtube")
