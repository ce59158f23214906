# models/__init__.py
# Keep this empty to avoid import side-effects.
# Import directly from submodules, e.g.:
# from models.systems import single_integrator
