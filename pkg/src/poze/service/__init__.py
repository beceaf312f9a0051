from .app import ModelRegistry, create_app

__all__ = ["ModelRegistry", "create_app"]
