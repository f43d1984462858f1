from hypothesis import settings

# property tests here do real search work per example; wall-clock deadlines
# only produce spurious flakes on loaded machines
settings.register_profile("cdsort", deadline=None)
settings.load_profile("cdsort")
